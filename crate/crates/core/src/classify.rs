//! Gentle / string classification, saturated cycles, gentle arrows and
//! critical paths.

use serde::Serialize;

use crate::error::QuiverError;
use crate::quiver::{ArrowId, BoundQuiver, Path};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    G1,
    G2,
    G3,
    G4,
    Admissible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub is_monomial_admissible: bool,
    pub is_string: bool,
    pub is_gentle: bool,
    pub violations: Vec<Violation>,
}

impl ClassificationReport {
    pub fn violates(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }
}

pub fn classify(bq: &BoundQuiver) -> ClassificationReport {
    let q = bq.quiver();
    let mut violations = Vec::new();
    let admissibility = bq.admissibility();
    if let crate::quiver::Admissibility::Infinite { witness } = &admissibility {
        violations.push(Violation {
            condition: Condition::Admissible,
            witness: format!("relation-free cycle {}", bq.display_arrows(witness)),
        });
    }
    for v in q.vertices() {
        if q.outgoing(v).len() > 2 {
            violations.push(Violation {
                condition: Condition::G1,
                witness: format!("{} arrows start at vertex {}", q.outgoing(v).len(), q.vertex_name(v)),
            });
        }
        if q.incoming(v).len() > 2 {
            violations.push(Violation {
                condition: Condition::G1,
                witness: format!("{} arrows end at vertex {}", q.incoming(v).len(), q.vertex_name(v)),
            });
        }
    }
    for r in bq.relations() {
        if r.len() != 2 {
            violations.push(Violation { condition: Condition::G2, witness: format!("relation {}", r.display(q)) });
        }
    }
    for b in q.arrows() {
        let before: Vec<ArrowId> = q.incoming(q.source(b)).to_vec();
        let after: Vec<ArrowId> = q.outgoing(q.target(b)).to_vec();
        let zero_before: Vec<_> = before.iter().filter(|&&a| bq.is_quadratic_relation(a, b)).collect();
        let zero_after: Vec<_> = after.iter().filter(|&&c| bq.is_quadratic_relation(b, c)).collect();
        let free_before: Vec<_> = before.iter().filter(|&&a| !bq.is_quadratic_relation(a, b)).collect();
        let free_after: Vec<_> = after.iter().filter(|&&c| !bq.is_quadratic_relation(b, c)).collect();
        let name = q.arrow_name(b);
        if zero_before.len() > 1 {
            violations.push(Violation {
                condition: Condition::G3,
                witness: format!("{} arrows a with a {name} in I", zero_before.len()),
            });
        }
        if zero_after.len() > 1 {
            violations.push(Violation {
                condition: Condition::G3,
                witness: format!("{} arrows c with {name} c in I", zero_after.len()),
            });
        }
        if free_before.len() > 1 {
            let names: Vec<&str> = free_before.iter().map(|&&a| q.arrow_name(a)).collect();
            violations.push(Violation {
                condition: Condition::G4,
                witness: format!("arrows {} all compose nonzero into {name}", names.join(", ")),
            });
        }
        if free_after.len() > 1 {
            let names: Vec<&str> = free_after.iter().map(|&&c| q.arrow_name(c)).collect();
            violations.push(Violation {
                condition: Condition::G4,
                witness: format!("{name} composes nonzero with {}", names.join(", ")),
            });
        }
    }
    let has = |c: Condition| violations.iter().any(|v: &Violation| v.condition == c);
    let is_monomial_admissible = admissibility.is_finite();
    let is_string = is_monomial_admissible && !has(Condition::G1) && !has(Condition::G4);
    let is_gentle = is_string && !has(Condition::G2) && !has(Condition::G3);
    ClassificationReport { is_monomial_admissible, is_string, is_gentle, violations }
}

pub fn require_gentle(bq: &BoundQuiver) -> Result<(), QuiverError> {
    let report = classify(bq);
    if report.is_gentle {
        Ok(())
    } else {
        Err(QuiverError::NotGentle(first_witness(&report)))
    }
}

pub fn require_string(bq: &BoundQuiver) -> Result<(), QuiverError> {
    let report = classify(bq);
    if report.is_string {
        Ok(())
    } else {
        Err(QuiverError::NotString(first_witness(&report)))
    }
}

fn first_witness(report: &ClassificationReport) -> String {
    report
        .violations
        .iter()
        .find(|v| !matches!(v.condition, Condition::G2 | Condition::G3) || !report.is_string)
        .or(report.violations.first())
        .map(|v| format!("{:?}: {}", v.condition, v.witness))
        .unwrap_or_default()
}

/// An oriented cycle all of whose consecutive compositions (cyclically) are
/// relations, stored in canonical rotation (least arrow first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SaturatedCycle {
    pub arrows: Vec<ArrowId>,
}

impl SaturatedCycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.arrows.len() == 1
    }

    /// `alpha_i`, indices taken modulo the length.
    pub fn arrow(&self, i: usize) -> ArrowId {
        self.arrows[i % self.arrows.len()]
    }

    pub fn display(&self, bq: &BoundQuiver) -> String {
        format!("({})", bq.display_arrows(&self.arrows))
    }
}

/// Rotates a cyclic arrow sequence so that it is lexicographically least
/// among its rotations (declaration order of arrows).
pub fn canonical_rotation(cycle: &[ArrowId]) -> Vec<ArrowId> {
    (0..cycle.len()).map(|k| cycle[k..].iter().chain(&cycle[..k]).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

/// All saturated cycles, each elementary cycle of the "relation graph"
/// (arrow `a` to arrow `b` when `ab` is a relation) reported once.
pub fn saturated_cycles(bq: &BoundQuiver) -> Vec<SaturatedCycle> {
    let q = bq.quiver();
    let n = q.arrow_count();
    let succ: Vec<Vec<ArrowId>> = q
        .arrows()
        .map(|a| q.outgoing(q.target(a)).iter().copied().filter(|&b| bq.is_quadratic_relation(a, b)).collect())
        .collect();
    let mut out = Vec::new();
    // elementary cycles whose least arrow is `start`
    for start in 0..n {
        let start = ArrowId(start);
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start.0] = true;
        let mut iters = vec![0usize];
        while let Some(k) = iters.last_mut() {
            let cur = *path.last().unwrap();
            if *k < succ[cur.0].len() {
                let nxt = succ[cur.0][*k];
                *k += 1;
                if nxt == start {
                    out.push(SaturatedCycle { arrows: path.clone() });
                } else if nxt > start && !on_path[nxt.0] {
                    on_path[nxt.0] = true;
                    path.push(nxt);
                    iters.push(0);
                }
            } else {
                on_path[cur.0] = false;
                path.pop();
                iters.pop();
            }
        }
    }
    out.sort();
    out
}

/// Arrows `b` with no arrow `a` such that `ab` is a relation.
pub fn gentle_arrows(bq: &BoundQuiver) -> Vec<ArrowId> {
    let q = bq.quiver();
    q.arrows().filter(|&b| !q.incoming(q.source(b)).iter().any(|&a| bq.is_quadratic_relation(a, b))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPaths {
    pub paths: Vec<Path>,
    /// Maximal critical path length; zero when there is no gentle arrow.
    pub n_lambda: usize,
}

/// Maximal critical paths: chains of consecutive relations starting at a
/// gentle arrow. A gentle arrow that starts no relation is a critical path of
/// length one.
pub fn critical_paths(bq: &BoundQuiver) -> Result<CriticalPaths, QuiverError> {
    require_gentle(bq)?;
    let q = bq.quiver();
    let mut paths = Vec::new();
    for a in gentle_arrows(bq) {
        let mut chain = vec![a];
        loop {
            let last = *chain.last().unwrap();
            let next = q.outgoing(q.target(last)).iter().copied().find(|&c| bq.is_quadratic_relation(last, c));
            match next {
                // a chain from a gentle arrow never enters a cycle in a gentle
                // algebra, the bound only guards malformed input
                Some(c) if chain.len() <= q.arrow_count() => chain.push(c),
                _ => break,
            }
        }
        paths.push(Path { start: q.source(a), arrows: chain });
    }
    let n_lambda = paths.iter().map(Path::len).max().unwrap_or(0);
    Ok(CriticalPaths { paths, n_lambda })
}

/// Bounds on the Gorenstein dimension of a gentle algebra: exact when
/// `n(Λ) > 0`, otherwise `(0, 1)`.
pub fn gorenstein_dimension_gentle(bq: &BoundQuiver) -> Result<(usize, usize), QuiverError> {
    let n = critical_paths(bq)?.n_lambda;
    Ok(if n > 0 { (n, n) } else { (0, 1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(bq: &BoundQuiver, arrows: &[ArrowId]) -> Vec<String> {
        arrows.iter().map(|&a| bq.quiver().arrow_name(a).to_string()).collect()
    }

    #[test]
    fn d6_is_string_not_gentle() {
        let r = classify(&fixtures::d6());
        assert!(r.is_string && !r.is_gentle);
        assert!(r.violates(Condition::G2));
        assert!(r.violations.iter().any(|v| v.witness.contains("alpha beta gamma")));
        assert!(!r.violates(Condition::G1) && !r.violates(Condition::G4));
    }

    #[test]
    fn triple_arrows_violate_g1() {
        let bq = BoundQuiver::from_names("k3", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")], &[]).unwrap();
        let r = classify(&bq);
        assert!(!r.is_string);
        assert!(r.violations.iter().any(|v| v.condition == Condition::G1 && v.witness.contains("vertex 1")));
    }

    #[test]
    fn small_fixtures_are_gentle() {
        for bq in [fixtures::lin3(), fixtures::a3c(), fixtures::loop1()] {
            assert!(classify(&bq).is_gentle, "{}", bq.name);
        }
    }

    #[test]
    fn ej8_as_declared_fails_g4_at_the_lambda_arrows() {
        let r = classify(&fixtures::ej8());
        assert!(!r.is_gentle);
        assert!(r.violates(Condition::G4));
        assert!(r.violations.iter().any(|v| v.witness.starts_with("lambda1 composes nonzero")));
    }

    #[test]
    fn saturated_cycles_of_fixtures() {
        let a3c = fixtures::a3c();
        let cycles = saturated_cycles(&a3c);
        assert_eq!(cycles.len(), 1);
        assert_eq!(names(&a3c, &cycles[0].arrows), ["a", "b", "c"]);
        assert!(saturated_cycles(&fixtures::lin3()).is_empty());
        let ej8 = fixtures::ej8();
        let cycles = saturated_cycles(&ej8);
        let mut lens: Vec<usize> = cycles.iter().map(SaturatedCycle::len).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 3, 3, 3]);
        assert!(cycles.iter().any(|c| names(&ej8, &c.arrows) == ["delta1"]));
    }

    #[test]
    fn gentle_arrows_of_fixtures() {
        let lin3 = fixtures::lin3();
        assert_eq!(names(&lin3, &gentle_arrows(&lin3)), ["a", "b"]);
        assert!(gentle_arrows(&fixtures::a3c()).is_empty());
        let ej8 = fixtures::ej8();
        assert_eq!(names(&ej8, &gentle_arrows(&ej8)), ["lambda1", "lambda2"]);
    }

    #[test]
    fn critical_paths_and_gorenstein_bounds() {
        let a3c = fixtures::a3c();
        let cp = critical_paths(&a3c).unwrap();
        assert!(cp.paths.is_empty());
        assert_eq!(cp.n_lambda, 0);
        assert_eq!(gorenstein_dimension_gentle(&a3c).unwrap(), (0, 1));

        let ab = BoundQuiver::from_names("ab", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[&["a", "b"]]).unwrap();
        let cp = critical_paths(&ab).unwrap();
        assert_eq!(cp.n_lambda, 2);
        assert_eq!(cp.paths[0].display(ab.quiver()), "a b");
        assert_eq!(gorenstein_dimension_gentle(&ab).unwrap(), (2, 2));

        let lin3 = fixtures::lin3();
        assert_eq!(critical_paths(&lin3).unwrap().n_lambda, 1);
        assert!(critical_paths(&fixtures::d6()).is_err());
    }

    #[test]
    fn canonical_rotation_prefers_least_sequence() {
        let c = canonical_rotation(&[ArrowId(2), ArrowId(0), ArrowId(1)]);
        assert_eq!(c, vec![ArrowId(0), ArrowId(1), ArrowId(2)]);
        let c = canonical_rotation(&[ArrowId(1), ArrowId(0), ArrowId(1), ArrowId(0), ArrowId(2)]);
        assert_eq!(c, vec![ArrowId(0), ArrowId(1), ArrowId(0), ArrowId(2), ArrowId(1)]);
    }
}
