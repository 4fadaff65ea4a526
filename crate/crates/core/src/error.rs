use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("empty path")]
    EmptyPath,
    #[error("path {path:?} is not composable at position {position}")]
    NotComposable { path: Vec<String>, position: usize },
    #[error("relation {0:?} has length < 2")]
    RelationTooShort(Vec<String>),
    #[error("not admissible: relation-free cycle {0:?}")]
    NotAdmissible(Vec<String>),
    #[error("not a gentle algebra: {0}")]
    NotGentle(String),
    #[error("not a string algebra: {0}")]
    NotString(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("malformed string `{0}`")]
    Malformed(String),
    #[error("not a string: {0}")]
    NotAString(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("characteristic {0} is not supported: {1}")]
    UnsupportedField(u64, String),
    #[error("representation violates relation {0}")]
    RelationViolated(String),
    #[error("modules live over different bound quivers")]
    Mismatch,
    #[error("no decomposition into string modules found: {0}")]
    DecompositionNotFound(String),
    #[error("unresolved after {0} syzygy steps")]
    Unresolved(usize),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    String(#[from] StringError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("matching an outlet to itself or to another outlet of the same block (block {0})")]
    SameBlock(usize),
    #[error("loop-loop matching between blocks {0} and {1}")]
    LoopLoop(usize, usize),
    #[error("outlet ({0}, {1}) matched more than once")]
    OutletReused(usize, usize),
    #[error("outlet ({0}, {1}) does not exist")]
    NoSuchOutlet(usize, usize),
    #[error("opposite arrows between glued vertices {0} and {1}")]
    OppositeArrows(String, String),
    #[error("glued quiver is not gentle: {0}")]
    NotGentle(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("label {0} out of range")]
    OutOfRange(i64),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("not an m-diagonal: {0}")]
    NotMDiagonal(String),
    #[error("not an angulation: {0}")]
    NotAngulation(String),
    #[error("no angulation found within {0} attempts")]
    RetryBudget(usize),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmError {
    #[error("Gorenstein dimension not resolved: {0}")]
    UnresolvedGorenstein(String),
    #[error("periodicity and Ext vanishing disagree on {0}")]
    Disagreement(String),
    #[error("radical summand {0} is neither CM nor of projective dimension at most d-1")]
    TrichotomyViolated(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
