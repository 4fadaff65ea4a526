//! Property batteries over fixtures and seeded instances.
//!
//! Every check returns its failures; a suite runs one check per seed and
//! collects failures in seed order, so reports do not depend on scheduling.

use serde::Serialize;

use crate::blocks::{decompose_blocks, same_decomposition, BlockKind};
use crate::classify::{classify, gorenstein_dimension_gentle, saturated_cycles};
use crate::cm::{
    cm_modules_gentle, cm_set_enumerated, fixed_point_set, formula_check, oracle_gorenstein, tau, verify_2cy_necessary,
};
use crate::exec::Execution;
use crate::field::F10007;
use crate::generate::{random_block_instance, random_gentle, BlockInstance};
use crate::potential::{potential_from_decomposition, verify_jacobian_equals};
use crate::quiver::BoundQuiver;
use crate::repr::Oracle;
use crate::strings::{StringAlgebra, StringWord};
use crate::surface::{quiver_from_angulation, random_angulation, verify_angulation_properties, Angulation, Model};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

type Problems = Vec<(String, String)>;

fn problem(out: &mut Problems, check: &str, detail: String) {
    out.push((check.to_string(), detail));
}

/// Strings enumerated for fixed-point comparisons: `2 dim Λ` letters, capped
/// so that band-rich random algebras stay tractable.
pub fn letter_bound(bq: &BoundQuiver, cap: usize) -> usize {
    (2 * bq.dimension().unwrap_or(0)).min(cap)
}

fn setup(bq: &BoundQuiver) -> Result<(Oracle<F10007>, StringAlgebra), String> {
    let o = Oracle::<F10007>::new(bq.clone()).map_err(|e| e.to_string())?;
    let alg = StringAlgebra::new(bq.clone()).map_err(|e| e.to_string())?;
    Ok((o, alg))
}

/// Saturated-cycle calculus on a gentle algebra: stable `Ω M(u_i) ≅
/// M(u_{i+1})`, `τ M(u_i) ≅ M(v_{i+1})`, `Ω² τ M ≅ M` on the CM modules, and
/// the fixed points of `Ω² τ` equal to the CM modules.
pub fn check_saturated_calculus(bq: &BoundQuiver, letter_cap: usize) -> Problems {
    let mut out = Vec::new();
    let (o, alg) = match setup(bq) {
        Ok(x) => x,
        Err(e) => {
            problem(&mut out, "setup", e);
            return out;
        }
    };
    let q = alg.quiver();
    for cycle in saturated_cycles(bq) {
        let uv = match alg.uv_data(&cycle) {
            Ok(uv) => uv,
            Err(e) => {
                problem(&mut out, "uv-data", e.to_string());
                continue;
            }
        };
        let n = uv.len();
        for i in 0..n {
            let (u, _) = &uv[i];
            let (u_next, v_next) = &uv[(i + 1) % n];
            let syz = alg.syzygy(&alg.single(u), true);
            if syz != alg.single(u_next) {
                problem(
                    &mut out,
                    "syzygy-u",
                    format!(
                        "{}: stable syzygy of {} is {}, expected {}",
                        cycle.display(bq),
                        u.display(q),
                        syz.display(q),
                        u_next.display(q)
                    ),
                );
            }
            match tau(&o, &alg, u) {
                Ok(t) if t == alg.single(v_next) => {}
                Ok(t) => problem(
                    &mut out,
                    "tau-u",
                    format!("{}: tau of {} is {}, expected {}", cycle.display(bq), u.display(q), t.display(q), v_next.display(q)),
                ),
                Err(e) => problem(&mut out, "tau-u", e.to_string()),
            }
        }
    }
    let cm = match cm_modules_gentle(&alg) {
        Ok(cm) => cm,
        Err(e) => {
            problem(&mut out, "cm-modules", e.to_string());
            return out;
        }
    };
    for w in &cm {
        match formula_check(&o, &alg, w, 1) {
            Ok(true) => {}
            Ok(false) => problem(&mut out, "omega2-tau", format!("{} is not fixed", w.display(q))),
            Err(e) => problem(&mut out, "omega2-tau", e.to_string()),
        }
    }
    let letters = letter_bound(bq, letter_cap);
    match fixed_point_set(&o, &alg, 1, letters, Execution::Sequential) {
        Ok(fp) => {
            let expected: Vec<StringWord> = cm.iter().filter(|w| w.len() <= letters).cloned().collect();
            if fp != expected {
                problem(&mut out, "fixed-points", format!("fixed points {} vs CM {}", show(&alg, &fp), show(&alg, &expected)));
            }
        }
        Err(e) => problem(&mut out, "fixed-points", e.to_string()),
    }
    out
}

fn show(alg: &StringAlgebra, ws: &[StringWord]) -> String {
    format!("{{{}}}", ws.iter().map(|w| w.display(alg.quiver())).collect::<Vec<_>>().join(", "))
}

/// Round trip and structure of a glued block algebra.
pub fn check_block_instance(inst: &BlockInstance) -> Problems {
    let mut out = Vec::new();
    let bq = &inst.glued.bound_quiver;
    if !classify(bq).is_gentle {
        problem(&mut out, "gentle", "glued algebra is not gentle".into());
        return out;
    }
    match gorenstein_dimension_gentle(bq) {
        Ok((_, hi)) if hi <= 1 => {}
        Ok((lo, _)) => problem(&mut out, "gorenstein", format!("Gorenstein dimension {lo}")),
        Err(e) => problem(&mut out, "gorenstein", e.to_string()),
    }
    match verify_2cy_necessary(bq) {
        Ok(r) if r.all() => {}
        Ok(r) => problem(&mut out, "2cy", format!("{r:?}")),
        Err(e) => problem(&mut out, "2cy", e.to_string()),
    }
    match decompose_blocks(bq) {
        Ok(dec) => {
            if !same_decomposition(&inst.kinds, &inst.matching, &inst.glued, &dec) {
                problem(&mut out, "round-trip", dec.serialize(bq.quiver()));
            }
            let w = potential_from_decomposition(bq.quiver(), &dec);
            for c in [0, 5, 10007] {
                let v = verify_jacobian_equals(bq, &w, c);
                if !v.holds {
                    problem(&mut out, "jacobian", format!("char {c}: {}", v.witnesses.join("; ")));
                }
            }
            let loops = inst.kinds.contains(&BlockKind::Loop);
            if loops && verify_jacobian_equals(bq, &w, 3).holds {
                problem(&mut out, "jacobian-char-3", "verified over characteristic 3 despite a loop block".into());
            }
        }
        Err(w) => problem(&mut out, "round-trip", format!("{}: {}", w.rule, w.detail)),
    }
    out
}

/// Structural properties of an angulation algebra and agreement of the
/// `Ω^{m+1} τ` fixed points with the CM set.
pub fn check_angulation(ang: &Angulation, letter_cap: usize) -> Problems {
    let mut out = Vec::new();
    let m = ang.model.m();
    let bq = match quiver_from_angulation(ang) {
        Ok(bq) => bq,
        Err(e) => {
            problem(&mut out, "quiver", e.to_string());
            return out;
        }
    };
    let report = verify_angulation_properties(ang, &bq);
    for (name, flag) in [
        ("gentle", &report.gentle),
        ("cycle-length", &report.saturated_cycles_have_length_m_plus_2),
        ("relation-chains", &report.relation_chains_outside_cycles_at_most_m_minus_1),
        ("gorenstein", &report.gorenstein_at_most_m),
    ] {
        if !flag.holds {
            problem(&mut out, name, flag.witness.clone().unwrap_or_default());
        }
    }
    if !out.is_empty() {
        return out;
    }
    let (o, alg) = match setup(&bq) {
        Ok(x) => x,
        Err(e) => {
            problem(&mut out, "setup", e);
            return out;
        }
    };
    let cutoff = o.default_cutoff();
    let letters = letter_bound(&bq, letter_cap);
    let result = oracle_gorenstein(&o, cutoff).and_then(|d| {
        let cm = cm_set_enumerated(&o, &alg, d, letters, cutoff, Execution::Sequential)?;
        let fp = fixed_point_set(&o, &alg, m, letters, Execution::Sequential)?;
        Ok((cm, fp))
    });
    match result {
        Ok((cm, fp)) => {
            if cm != fp {
                problem(&mut out, "fixed-points", format!("fixed points {} vs CM {}", show(&alg, &fp), show(&alg, &cm)));
            }
            if let Ok(kalck) = cm_modules_gentle(&alg) {
                let in_range: Vec<StringWord> = kalck.into_iter().filter(|w| w.len() <= letters).collect();
                if in_range != cm {
                    problem(
                        &mut out,
                        "kalck",
                        format!("saturated-cycle modules {} vs CM {}", show(&alg, &in_range), show(&alg, &cm)),
                    );
                }
            }
        }
        Err(e) => problem(&mut out, "cm", e.to_string()),
    }
    if let Model::Disk { m: 1, .. } = ang.model {
        match verify_2cy_necessary(&bq) {
            Ok(r) if r.all() => {}
            Ok(r) => problem(&mut out, "2cy", format!("{r:?}")),
            Err(e) => problem(&mut out, "2cy", e.to_string()),
        }
        match decompose_blocks(&bq) {
            Ok(dec) if dec.count(BlockKind::Loop) == 0 => {}
            Ok(_) => problem(&mut out, "blocks", "loop block in a disk triangulation".into()),
            Err(w) => problem(&mut out, "blocks", format!("{}: {}", w.rule, w.detail)),
        }
    }
    out
}

/// Combinatorial `Ω` and `τ` against the oracle on strings up to
/// `max_letters` letters, and `dim Λ` against the regular representation.
pub fn check_parity(bq: &BoundQuiver, max_letters: usize) -> Problems {
    let mut out = Vec::new();
    let (o, alg) = match setup(bq) {
        Ok(x) => x,
        Err(e) => {
            problem(&mut out, "setup", e);
            return out;
        }
    };
    let q = alg.quiver();
    match bq.dimension() {
        Ok(d) if d == o.regular_dimension() => {}
        Ok(d) => problem(&mut out, "dimension", format!("paths give {d}, oracle {}", o.regular_dimension())),
        Err(e) => problem(&mut out, "dimension", e.to_string()),
    }
    for w in alg.enumerate_strings(max_letters) {
        let comb = alg.syzygy(&alg.single(&w), false);
        match o.decompose(&o.syzygy(&o.rep_of_string(&w))) {
            Ok(exact) if exact == comb => {}
            Ok(exact) => {
                problem(&mut out, "syzygy", format!("{}: {} vs oracle {}", w.display(q), comb.display(q), exact.display(q)))
            }
            Err(e) => problem(&mut out, "syzygy", e.to_string()),
        }
        let exact = match o.string_tau(&w) {
            Ok(t) => t,
            Err(e) => {
                problem(&mut out, "tau", e.to_string());
                continue;
            }
        };
        match alg.tau_combinatorial(&w) {
            Some(t) if t == exact => {}
            Some(t) => problem(&mut out, "tau", format!("{}: {} vs oracle {}", w.display(q), t.display(q), exact.display(q))),
            None => problem(&mut out, "tau", format!("{}: no surgery applies", w.display(q))),
        }
    }
    out
}

fn run<T, F>(suite: &str, seed: u64, items: Vec<(u64, T)>, exec: Execution, check: F) -> SuiteReport
where
    T: Send,
    F: Fn(T) -> Problems + Sync + Send,
{
    let count = items.len();
    let results = exec.map(items, |(s, item)| (s, check(item)));
    let mut failures = Vec::new();
    let mut passed = 0;
    for (s, problems) in results {
        if problems.is_empty() {
            passed += 1;
        }
        failures.extend(problems.into_iter().map(|(check, detail)| Failure { seed: s, check, detail }));
    }
    SuiteReport { suite: suite.to_string(), seed, count, passed, failures }
}

/// Default cap on enumerated string length in the suites.
pub const LETTER_CAP: usize = 10;

fn seeds(seed: u64, count: usize) -> impl Iterator<Item = u64> {
    (0..count as u64).map(move |i| seed.wrapping_add(i))
}

/// Glue, decompose and verify `count` seeded block algebras.
pub fn blocks_suite(count: usize, seed: u64, exec: Execution) -> SuiteReport {
    let items = seeds(seed, count).map(|s| (s, s)).collect();
    run("blocks", seed, items, exec, |s| check_block_instance(&random_block_instance(s, 6, 10)))
}

/// Saturated-cycle calculus on `count` seeded block algebras.
pub fn calculus_suite(count: usize, seed: u64, exec: Execution) -> SuiteReport {
    let items = seeds(seed, count).map(|s| (s, s)).collect();
    run("calculus", seed, items, exec, |s| {
        check_saturated_calculus(&random_block_instance(s, 6, 10).glued.bound_quiver, LETTER_CAP)
    })
}

/// Oracle parity on `count` seeded gentle algebras with at most 10 vertices.
pub fn parity_suite(count: usize, seed: u64, exec: Execution) -> SuiteReport {
    let items = seeds(seed, count).map(|s| (s, s)).collect();
    run("parity", seed, items, exec, |s| check_parity(&random_gentle(s, 10, 60), 5))
}

/// Random angulations of `model`.
pub fn angulation_suite(model: Model, count: usize, seed: u64, exec: Execution) -> SuiteReport {
    let name = match model {
        Model::Disk { .. } => "disk",
        Model::Annulus { .. } => "annulus",
    };
    let items = seeds(seed, count).map(|s| (s, s)).collect();
    run(name, seed, items, exec, |s| match random_angulation(&model, s) {
        Ok(ang) => check_angulation(&ang, LETTER_CAP),
        Err(e) => vec![("generate".to_string(), e.to_string())],
    })
}

/// Every angulation in `angs`, with the index as the seed column.
pub fn angulation_list_suite(name: &str, angs: Vec<Angulation>, exec: Execution) -> SuiteReport {
    let items = angs.into_iter().enumerate().map(|(i, a)| (i as u64, a)).collect();
    run(name, 0, items, exec, |a| check_angulation(&a, LETTER_CAP))
}
