//! Computations with gentle and string bound-quiver algebras.
//!
//! The crate covers monomial bound quivers and their classification, the
//! string calculus for syzygies and Auslander-Reiten translates, an exact
//! linear-algebra oracle over quiver representations, Cohen-Macaulay
//! analysis, block decompositions with Jacobian potentials, and disk/annulus
//! angulation models.

pub mod blocks;
pub mod classify;
pub mod cm;
pub mod error;
pub mod exec;
pub mod field;
pub mod fixtures;
pub mod generate;
pub mod linalg;
pub mod parse;
pub mod potential;
pub mod quiver;
pub mod repr;
pub mod strings;
pub mod suite;
pub mod surface;

pub use classify::{classify, ClassificationReport, SaturatedCycle};
pub use error::{BlockError, CmError, OracleError, QuiverError, StringError, SurfaceError};
pub use exec::Execution;
pub use parse::{parse_bound_quiver, write_bound_quiver};
pub use quiver::{ArrowId, BoundQuiver, Path, Quiver, VertexId};
pub use strings::{Entry, Letter, ModuleSum, StringAlgebra, StringWord};
