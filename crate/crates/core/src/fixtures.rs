//! Named bound quivers used across tests, benches and the CLI.

use crate::parse::parse_bound_quiver;
use crate::quiver::BoundQuiver;

pub const LIN3_SOURCE: &str = include_str!("../fixtures/lin3.bq");
pub const A3C_SOURCE: &str = include_str!("../fixtures/a3c.bq");
pub const LOOP_SOURCE: &str = include_str!("../fixtures/loop.bq");
pub const EJ8_SOURCE: &str = include_str!("../fixtures/ej8.bq");
pub const EJ8_CORRECTED_SOURCE: &str = include_str!("../fixtures/ej8_corrected.bq");
pub const D6_SOURCE: &str = include_str!("../fixtures/d6.bq");
pub const PENTAGON_SOURCE: &str = include_str!("../fixtures/pentagon.ang");
pub const HEXAGON_SOURCE: &str = include_str!("../fixtures/hexagon.ang");
pub const ANNULUS_SOURCE: &str = include_str!("../fixtures/annulus.ang");

fn load(src: &str) -> BoundQuiver {
    parse_bound_quiver(src).expect("bundled fixture parses").bound_quiver
}

/// Linear A3: 1 -a-> 2 -b-> 3, no relations.
pub fn lin3() -> BoundQuiver {
    load(LIN3_SOURCE)
}

/// Oriented 3-cycle with all three compositions zero.
pub fn a3c() -> BoundQuiver {
    load(A3C_SOURCE)
}

/// One vertex, one loop `d` with `dd = 0`.
pub fn loop1() -> BoundQuiver {
    load(LOOP_SOURCE)
}

/// Eight vertices: three saturated 3-cycles, a saturated loop at 5 and the
/// arrows 8 -> 4 -> 1.
pub fn ej8() -> BoundQuiver {
    load(EJ8_SOURCE)
}

/// `ej8` with `lambda1: 8 -> 7`. With this change vertex 4 meets only two
/// blocks and the algebra is gentle with two type I, three type II and one
/// loop block.
pub fn ej8_corrected() -> BoundQuiver {
    load(EJ8_CORRECTED_SOURCE)
}

/// Six vertices, relations `lambda alpha`, `alpha beta gamma`,
/// `beta gamma delta`, `delta lambda`.
pub fn d6() -> BoundQuiver {
    load(D6_SOURCE)
}

pub fn all() -> Vec<BoundQuiver> {
    vec![lin3(), a3c(), loop1(), ej8(), ej8_corrected(), d6()]
}

pub fn by_name(name: &str) -> Option<BoundQuiver> {
    match name {
        "lin3" => Some(lin3()),
        "a3c" => Some(a3c()),
        "loop" => Some(loop1()),
        "ej8" => Some(ej8()),
        "ej8-corrected" => Some(ej8_corrected()),
        "d6" => Some(d6()),
        _ => None,
    }
}
