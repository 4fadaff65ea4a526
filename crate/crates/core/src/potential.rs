//! Potentials `W = Σ αβγ + Σ δ³`, cyclic derivatives and the comparison of
//! the Jacobian relations with the relations of a bound quiver.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::blocks::{BlockDecomposition, BlockKind};
use crate::classify::{canonical_rotation, saturated_cycles};
use crate::error::QuiverError;
use crate::quiver::{ArrowId, BoundQuiver, Quiver};

/// A finite sum of cycles with integer coefficients, each cycle stored once in
/// canonical rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Potential {
    pub terms: BTreeMap<Vec<ArrowId>, i64>,
}

/// A finite sum of paths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathCombination {
    pub terms: BTreeMap<Vec<ArrowId>, i64>,
}

impl PathCombination {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, path: Vec<ArrowId>, c: i64) {
        let e = self.terms.entry(path).or_insert(0);
        *e += c;
    }

    pub fn plus(&self, other: &PathCombination) -> PathCombination {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add(p.clone(), *c);
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    /// Coefficients reduced modulo `characteristic` (none for 0); zero terms
    /// are dropped.
    pub fn reduce(&self, characteristic: u64) -> PathCombination {
        let terms = self
            .terms
            .iter()
            .map(|(p, &c)| (p.clone(), if characteristic == 0 { c } else { c.rem_euclid(characteristic as i64) }))
            .filter(|(_, c)| *c != 0)
            .collect();
        PathCombination { terms }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c}*{}", p.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(" ")))
            .collect();
        parts.join(" + ")
    }
}

impl Potential {
    /// Adds `c` times the cycle `arrows`, which must be composable and closed.
    pub fn add_cycle(&mut self, q: &Quiver, arrows: &[ArrowId], c: i64) -> Result<(), QuiverError> {
        let names = || arrows.iter().map(|&a| q.arrow_name(a).to_string()).collect::<Vec<_>>();
        if arrows.is_empty() {
            return Err(QuiverError::EmptyPath);
        }
        for k in 0..arrows.len() {
            let next = arrows[(k + 1) % arrows.len()];
            if q.target(arrows[k]) != q.source(next) {
                return Err(QuiverError::NotComposable { path: names(), position: k + 1 });
            }
        }
        let key = canonical_rotation(arrows);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn plus(&self, other: &Potential) -> Potential {
        let mut out = self.clone();
        for (cyc, c) in &other.terms {
            let e = out.terms.entry(cyc.clone()).or_insert(0);
            *e += c;
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// One line `term <coeff> <arrow> ...` per cycle.
    pub fn serialize(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(cyc, c)| format!("term {c} {}\n", cyc.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(" ")))
            .collect()
    }

    pub fn parse(q: &Quiver, text: &str) -> Result<Potential, QuiverError> {
        let mut w = Potential::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| QuiverError::Syntax { line: i + 1, column: 1, message };
            let mut parts = line.split_whitespace();
            if parts.next() != Some("term") {
                return Err(syntax("expected `term <coeff> <arrows>`".into()));
            }
            let c: i64 = parts
                .next()
                .ok_or_else(|| syntax("missing coefficient".into()))?
                .parse()
                .map_err(|_| syntax("coefficient is not an integer".into()))?;
            let arrows = parts
                .map(|n| q.arrow_by_name(n).ok_or_else(|| QuiverError::UnknownArrow(n.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            w.add_cycle(q, &arrows, c)?;
        }
        Ok(w)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(cyc, c)| {
                let p = cyc.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(" ");
                if *c == 1 {
                    p
                } else {
                    format!("{c}*{p}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `Σ αβγ` over type II blocks plus `Σ δ³` over loop blocks.
pub fn potential_from_decomposition(q: &Quiver, dec: &BlockDecomposition) -> Potential {
    let mut w = Potential::default();
    for b in &dec.blocks {
        match b.kind {
            BlockKind::II => w.add_cycle(q, &b.arrows, 1).expect("3-cycle block"),
            BlockKind::Loop => w.add_cycle(q, &[b.arrows[0]; 3], 1).expect("loop block"),
            BlockKind::I => {}
        }
    }
    w
}

/// The same potential read off the saturated 3-cycles and loops directly,
/// for inputs without a block decomposition.
pub fn potential_from_saturated_cycles(bq: &BoundQuiver) -> Potential {
    let q = bq.quiver();
    let mut w = Potential::default();
    for c in saturated_cycles(bq) {
        if c.is_loop() {
            w.add_cycle(q, &[c.arrows[0]; 3], 1).expect("loop");
        } else if c.len() == 3 {
            w.add_cycle(q, &c.arrows, 1).expect("3-cycle");
        }
    }
    w
}

/// `∂_a W`, counting every occurrence of `a` in every term.
pub fn cyclic_derivative(w: &Potential, a: ArrowId) -> PathCombination {
    let mut out = PathCombination::default();
    for (cyc, c) in &w.terms {
        for k in 0..cyc.len() {
            if cyc[k] == a {
                let path: Vec<ArrowId> = cyc[k + 1..].iter().chain(&cyc[..k]).copied().collect();
                out.add(path, *c);
            }
        }
    }
    out.terms.retain(|_, c| *c != 0);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianRelation {
    pub arrow: ArrowId,
    /// `∂_arrow W` with coefficients reduced; zero terms dropped.
    pub derivative: PathCombination,
    /// The derivative was nonzero over the integers but vanishes here.
    pub vanishes: bool,
}

pub fn jacobian_relations(q: &Quiver, w: &Potential, characteristic: u64) -> Vec<JacobianRelation> {
    q.arrows()
        .map(|a| {
            let raw = cyclic_derivative(w, a);
            let derivative = raw.reduce(characteristic);
            JacobianRelation { arrow: a, vanishes: !raw.is_empty() && derivative.is_empty(), derivative }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianVerdict {
    pub characteristic: u64,
    pub holds: bool,
    pub witnesses: Vec<String>,
}

fn minimal(paths: BTreeSet<Vec<ArrowId>>) -> BTreeSet<Vec<ArrowId>> {
    let all: Vec<Vec<ArrowId>> = paths.iter().cloned().collect();
    paths
        .into_iter()
        .filter(|p| !all.iter().any(|r| r.len() < p.len() && p.windows(r.len()).any(|win| win == r.as_slice())))
        .collect()
}

/// Whether the Jacobian relations of `w` over the given characteristic are
/// monomials generating exactly the relations of `bq`.
pub fn verify_jacobian_equals(bq: &BoundQuiver, w: &Potential, characteristic: u64) -> JacobianVerdict {
    let q = bq.quiver();
    let show = |p: &[ArrowId]| p.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(" ");
    let mut witnesses = Vec::new();
    let mut monomials = BTreeSet::new();
    for r in jacobian_relations(q, w, characteristic) {
        let name = q.arrow_name(r.arrow);
        if r.vanishes {
            let raw = cyclic_derivative(w, r.arrow);
            witnesses.push(format!("d/d{name} W = {} vanishes in characteristic {characteristic}", raw.display(q)));
        }
        match r.derivative.terms.len() {
            0 => {}
            1 => {
                monomials.insert(r.derivative.terms.keys().next().expect("one term").clone());
            }
            _ => witnesses.push(format!("d/d{name} W = {} is not a monomial", r.derivative.display(q))),
        }
    }
    let generated = minimal(monomials);
    let expected = minimal(bq.relations().iter().map(|p| p.arrows.clone()).collect());
    for p in expected.difference(&generated) {
        witnesses.push(format!("relation {} is not generated", show(p)));
    }
    for p in generated.difference(&expected) {
        witnesses.push(format!("{} is not a relation", show(p)));
    }
    let holds = generated == expected && witnesses.is_empty();
    JacobianVerdict { characteristic, holds, witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::decompose_blocks;
    use crate::fixtures;

    fn arrow(q: &Quiver, n: &str) -> ArrowId {
        q.arrow_by_name(n).unwrap()
    }

    #[test]
    fn derivatives() {
        let lp = fixtures::loop1();
        let q = lp.quiver();
        let d = q.arrows().next().unwrap();
        let w = potential_from_saturated_cycles(&lp);
        let der = cyclic_derivative(&w, d);
        assert_eq!(der.terms.get(&vec![d, d]), Some(&3));
        let a3c = fixtures::a3c();
        let q = a3c.quiver();
        let w = potential_from_saturated_cycles(&a3c);
        assert_eq!(w.terms.len(), 1);
        let a = q.arrows().next().unwrap();
        let der = cyclic_derivative(&w, a);
        assert_eq!(der.terms.len(), 1);
        assert_eq!(der.terms.values().next(), Some(&1));
        let lin3 = fixtures::lin3();
        let w = potential_from_saturated_cycles(&lin3);
        assert!(w.is_zero());
        assert!(cyclic_derivative(&w, ArrowId(0)).is_empty());
    }

    #[test]
    fn loop_in_characteristic_three() {
        let lp = fixtures::loop1();
        let q = lp.quiver();
        let w = potential_from_saturated_cycles(&lp);
        let rels = jacobian_relations(q, &w, 3);
        assert!(rels[0].vanishes && rels[0].derivative.is_empty());
        let v = verify_jacobian_equals(&lp, &w, 3);
        assert!(!v.holds);
        assert!(v.witnesses[0].contains("vanishes in characteristic 3"));
        assert!(verify_jacobian_equals(&lp, &w, 2).holds);
        assert!(verify_jacobian_equals(&lp, &w, 0).holds);
    }

    #[test]
    fn ej8_potential() {
        for bq in [fixtures::ej8(), fixtures::ej8_corrected()] {
            let q = bq.quiver();
            let w = potential_from_saturated_cycles(&bq);
            assert_eq!(w.terms.len(), 4);
            let rels = jacobian_relations(q, &w, 0);
            assert_eq!(rels.len(), 12);
            assert!(rels[arrow(q, "lambda1").0].derivative.is_empty());
            assert!(rels[arrow(q, "lambda2").0].derivative.is_empty());
            let d = arrow(q, "delta1");
            assert_eq!(rels[d.0].derivative.terms.get(&vec![d, d]), Some(&3));
            assert!(verify_jacobian_equals(&bq, &w, 0).holds);
            assert!(verify_jacobian_equals(&bq, &w, 10007).holds);
            assert!(!verify_jacobian_equals(&bq, &w, 3).holds);
        }
        let bq = fixtures::ej8_corrected();
        let dec = decompose_blocks(&bq).unwrap();
        assert_eq!(potential_from_decomposition(bq.quiver(), &dec), potential_from_saturated_cycles(&bq));
    }

    #[test]
    fn serialization_round_trip() {
        let bq = fixtures::ej8_corrected();
        let q = bq.quiver();
        let w = potential_from_saturated_cycles(&bq);
        let text = w.serialize(q);
        assert!(text.contains("term 1 delta1 delta1 delta1"));
        assert_eq!(Potential::parse(q, &text).unwrap(), w);
        assert!(Potential::parse(q, "term 1 alpha1 beta1").is_err());
    }

    #[test]
    fn a3c_in_characteristic_two() {
        let bq = fixtures::a3c();
        assert!(verify_jacobian_equals(&bq, &potential_from_saturated_cycles(&bq), 2).holds);
    }
}
