//! Acceptance criteria, run in order. Each prints a single PASS/FAIL line
//! with its elapsed time and limit, followed by any failure details. The
//! process exits with status 1 if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gentle_core::blocks::{decompose_blocks, BlockKind};
use gentle_core::cm::{cm_report, CmOptions};
use gentle_core::field::{FieldSpec, Workflow, F10007};
use gentle_core::generate::random_block_instance;
use gentle_core::potential::{potential_from_decomposition, potential_from_saturated_cycles, verify_jacobian_equals};
use gentle_core::repr::{Dimension, Oracle};
use gentle_core::suite::{
    angulation_list_suite, blocks_suite, calculus_suite, check_parity, check_saturated_calculus, letter_bound, parity_suite,
    SuiteReport,
};
use gentle_core::surface::{enumerate_disk_angulations, parse_angulation, quiver_from_angulation, random_angulation, Model};
use gentle_core::{classify, fixtures, BoundQuiver, Execution, StringAlgebra};

fn verdict(id: u32, title: &str, start: Instant, limit: Option<Duration>, mut failures: Vec<String>) -> bool {
    let elapsed = start.elapsed();
    if let Some(l) = limit {
        if elapsed > l {
            failures.push(format!("took {:.2?}, limit {:.0?}", elapsed, l));
        }
    }
    let limit = limit.map(|l| format!(", limit {:.0?}", l)).unwrap_or_default();
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id} {title}: {status} ({elapsed:.2?}{limit})");
    for f in &failures {
        println!("    {f}");
    }
    failures.is_empty()
}

fn suite_failures(r: &SuiteReport, out: &mut Vec<String>) {
    for f in r.failures.iter().take(20) {
        out.push(format!("{} seed {} {}: {}", r.suite, f.seed, f.check, f.detail));
    }
    if r.failures.len() > 20 {
        out.push(format!("{} ... {} failures in total", r.suite, r.failures.len()));
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(out: &mut Vec<String>, what: &str, got: T, want: T) {
    if got != want {
        out.push(format!("{what}: got {got:?}, expected {want:?}"));
    }
}

fn criterion_1_d6_reproduction() -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    let bq = fixtures::d6();
    let cutoff = 2 * bq.dimension().unwrap();
    let o = Oracle::<F10007>::new(bq.clone()).unwrap();
    expect(&mut fails, "Gorenstein dimension", o.gorenstein_dimension(cutoff).unwrap(), Dimension::Finite(2));
    match o.global_dimension(cutoff).unwrap() {
        Dimension::Infinite { period: 4, .. } => {}
        d => fails.push(format!("global dimension: got {d:?}, expected infinite with period 4")),
    }
    let alg = StringAlgebra::new(bq.clone()).unwrap();
    let opts = CmOptions { m: 2, max_letters: 8, cutoff, fixed_points: true, exec: Execution::default() };
    let r = cm_report(&o, &alg, opts).unwrap();
    // modules as "top/socle" vertex names, as a composition series would be written
    let q = alg.quiver();
    let names: BTreeSet<String> = alg
        .enumerate_strings(8)
        .into_iter()
        .filter(|w| r.cm_modules.contains(&w.display(q)))
        .map(|w| {
            let (top, socle) = w.top_socle(q);
            let join = |vs: Vec<_>| vs.into_iter().map(|v| q.vertex_name(v).to_string()).collect::<Vec<_>>().join(",");
            let (t, s) = (join(top), join(socle));
            if w.is_trivial() {
                t
            } else {
                format!("{t}/{s}")
            }
        })
        .collect();
    let want: BTreeSet<String> = ["3", "6", "5/4", "2/1"].iter().map(|s| s.to_string()).collect();
    expect(&mut fails, "CM modules", names, want);
    expect(&mut fails, "CM module count", r.cm_modules.len(), 4);
    expect(&mut fails, "fixed points equal CM", r.fixed_points_equal_cm, Some(true));
    verdict(1, "D6 reproduction", start, Some(Duration::from_secs(5)), fails)
}

fn blocks_counts(bq: &BoundQuiver) -> Result<(usize, usize, usize), String> {
    decompose_blocks(bq)
        .map(|d| (d.count(BlockKind::I), d.count(BlockKind::II), d.count(BlockKind::Loop)))
        .map_err(|w| format!("{}: {}", w.rule, w.detail))
}

fn ej8_failures(bq: &BoundQuiver) -> Vec<String> {
    let mut fails = Vec::new();
    expect(&mut fails, "gentle", classify(bq).is_gentle, true);
    let o = Oracle::<F10007>::new(bq.clone()).unwrap();
    expect(
        &mut fails,
        "Gorenstein dimension",
        o.gorenstein_dimension(2 * bq.dimension().unwrap()).unwrap(),
        Dimension::Finite(1),
    );
    let w = match decompose_blocks(bq) {
        Ok(dec) => potential_from_decomposition(bq.quiver(), &dec),
        Err(_) => potential_from_saturated_cycles(bq),
    };
    match blocks_counts(bq) {
        Ok(c) => expect(&mut fails, "blocks (I, II, Loop)", c, (2, 3, 1)),
        Err(e) => fails.push(format!("no block decomposition: {e}")),
    }
    for (c, want) in [(0, true), (10007, true), (3, false)] {
        expect(&mut fails, &format!("Jacobian over char {c}"), verify_jacobian_equals(bq, &w, c).holds, want);
    }
    fails
}

fn criterion_2_ej8_reproduction() -> bool {
    let start = Instant::now();
    let corrected = ej8_failures(&fixtures::ej8_corrected());
    println!("    info: with lambda1 retargeted to 7 the same checks give {} failures", corrected.len());
    verdict(2, "EJ8 reproduction", start, Some(Duration::from_secs(2)), ej8_failures(&fixtures::ej8()))
}

fn criterion_3_saturated_cycle_calculus() -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    for bq in [fixtures::a3c(), fixtures::loop1(), fixtures::ej8()] {
        let cap = letter_bound(&bq, usize::MAX);
        for (check, detail) in check_saturated_calculus(&bq, cap) {
            fails.push(format!("{} {check}: {detail}", bq.name));
        }
    }
    let corrected = check_saturated_calculus(&fixtures::ej8_corrected(), 12);
    println!("    info: ej8 with lambda1 retargeted to 7 gives {} failures", corrected.len());
    suite_failures(&calculus_suite(200, 0, Execution::default()), &mut fails);
    verdict(3, "saturated-cycle calculus", start, Some(Duration::from_secs(60)), fails)
}

fn criterion_4_block_round_trip() -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    let r = blocks_suite(500, 0, Execution::default());
    expect(&mut fails, "instances", r.count, 500);
    suite_failures(&r, &mut fails);
    verdict(4, "block round trip", start, None, fails)
}

fn criterion_5_angulation_suite() -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    for (n, m) in [(3, 1), (4, 1), (5, 1), (3, 2), (4, 2), (2, 3)] {
        let angs = enumerate_disk_angulations(n, m).unwrap();
        assert!(angs.len() <= 500, "enumeration of ({n},{m}) is small");
        println!("    disk n={n} m={m}: {} angulations", angs.len());
        let r = angulation_list_suite(&format!("disk-{n}-{m}"), angs, Execution::default());
        suite_failures(&r, &mut fails);
    }
    verdict(5, "angulation suite", start, Some(Duration::from_secs(300)), fails)
}

fn criterion_6_oracle_parity() -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    for bq in fixtures::all() {
        for (check, detail) in check_parity(&bq, 6) {
            fails.push(format!("{} {check}: {detail}", bq.name));
        }
    }
    suite_failures(&parity_suite(100, 0, Execution::default()), &mut fails);
    verdict(6, "oracle parity", start, None, fails)
}

/// Brute-force isomorphism of bound quivers: a vertex bijection and an arrow
/// bijection compatible with endpoints that carry relations onto relations.
fn isomorphic(a: &BoundQuiver, b: &BoundQuiver) -> bool {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.vertex_count() != qb.vertex_count()
        || qa.arrow_count() != qb.arrow_count()
        || a.relations().len() != b.relations().len()
    {
        return false;
    }
    let va: Vec<_> = qa.vertices().collect();
    let vb: Vec<_> = qb.vertices().collect();
    let aa: Vec<_> = qa.arrows().collect();
    let ab: Vec<_> = qb.arrows().collect();
    let rel_b: BTreeSet<Vec<usize>> =
        b.relations().iter().map(|p| p.arrows.iter().map(|x| ab.iter().position(|y| y == x).unwrap()).collect()).collect();
    permutations(va.len()).into_iter().any(|vp| {
        let image = |v| vb[vp[va.iter().position(|&x| x == v).unwrap()]];
        permutations(aa.len()).into_iter().any(|ap| {
            let ends_ok = aa.iter().enumerate().all(|(i, &x)| {
                let y = ab[ap[i]];
                image(qa.source(x)) == qb.source(y) && image(qa.target(x)) == qb.target(y)
            });
            ends_ok && {
                let rel_a: BTreeSet<Vec<usize>> = a
                    .relations()
                    .iter()
                    .map(|p| p.arrows.iter().map(|x| ap[aa.iter().position(|y| y == x).unwrap()]).collect())
                    .collect();
                rel_a == rel_b
            }
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_7_geometry_goldens() -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    let pentagon = quiver_from_angulation(&parse_angulation(fixtures::PENTAGON_SOURCE).unwrap()).unwrap();
    let a2 = gentle_core::parse_bound_quiver("quiver a2\nvertex 1 2\narrow a 1 2\n").unwrap().bound_quiver;
    expect(&mut fails, "pentagon fan is A2 without relations", isomorphic(&pentagon, &a2), true);
    let hexagon = quiver_from_angulation(&parse_angulation(fixtures::HEXAGON_SOURCE).unwrap()).unwrap();
    expect(&mut fails, "hexagon is the saturated 3-cycle", isomorphic(&hexagon, &fixtures::a3c()), true);
    let model = Model::Disk { n: 3, m: 1 };
    let seen: BTreeSet<_> = (0..200).map(|s| random_angulation(&model, s).unwrap().arc_set()).collect();
    expect(&mut fails, "distinct pentagon triangulations over 200 seeds", seen.len(), 5);
    verdict(7, "geometry goldens", start, None, fails)
}

fn criterion_8_characteristic_3_gate() -> bool {
    let start = Instant::now();
    let mut fails = Vec::new();
    let mut with_loops = vec![fixtures::loop1(), fixtures::ej8_corrected()];
    with_loops.extend(
        (0..200)
            .map(|s| random_block_instance(s, 6, 10))
            .filter(|i| i.kinds.contains(&BlockKind::Loop))
            .map(|i| i.glued.bound_quiver),
    );
    for bq in &with_loops {
        let dec = match decompose_blocks(bq) {
            Ok(d) => d,
            Err(w) => {
                fails.push(format!("{}: {}", bq.name, w.rule));
                continue;
            }
        };
        let v = verify_jacobian_equals(bq, &potential_from_decomposition(bq.quiver(), &dec), 3);
        if v.holds || !v.witnesses.iter().any(|w| w.contains("vanishes in characteristic 3")) {
            fails.push(format!("{}: {v:?}", bq.name));
        }
    }
    println!("    {} algebras with a loop block", with_loops.len());
    match FieldSpec::new(3, Workflow::Jacobian) {
        Ok(_) => fails.push("char 3 accepted for a Jacobian workflow".into()),
        Err(e) if e.to_string().contains("3 delta^2") => {}
        Err(e) => fails.push(format!("refusal does not explain itself: {e}")),
    }
    expect(&mut fails, "char 3 for analysis", FieldSpec::new(3, Workflow::Analysis).is_ok(), true);
    verdict(8, "characteristic 3 gate", start, None, fails)
}

fn main() {
    let results = [
        criterion_1_d6_reproduction(),
        criterion_2_ej8_reproduction(),
        criterion_3_saturated_cycle_calculus(),
        criterion_4_block_round_trip(),
        criterion_5_angulation_suite(),
        criterion_6_oracle_parity(),
        criterion_7_geometry_goldens(),
        criterion_8_characteristic_3_gate(),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed < results.len() {
        std::process::exit(1);
    }
}
