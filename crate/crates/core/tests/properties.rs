use proptest::prelude::*;

use gentle_core::classify::saturated_cycles;
use gentle_core::generate::{random_block_instance, random_gentle};
use gentle_core::potential::{cyclic_derivative, Potential};
use gentle_core::surface::{cross, is_angulation, is_m_diagonal, random_angulation, Angulation, Arc, Model};
use gentle_core::{fixtures, parse_bound_quiver, write_bound_quiver, Execution, StringAlgebra};

fn rotate(ang: &Angulation, k: usize) -> Angulation {
    let n = ang.model.disk_points().unwrap();
    let arcs = ang
        .arcs
        .iter()
        .map(|arc| match *arc {
            Arc::Disk { a, b } => Arc::disk((a + k) % n, (b + k) % n),
            other => other,
        })
        .collect();
    Angulation { model: ang.model, arcs }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_idempotent(seed in 0u64..10_000) {
        let alg = StringAlgebra::new(random_gentle(seed, 6, 40)).unwrap();
        let q = alg.quiver();
        for w in alg.enumerate_strings(4) {
            let c = w.canonical(q);
            prop_assert_eq!(c.canonical(q), c.clone());
            prop_assert_eq!(w.inverse(q).canonical(q), c.clone());
            prop_assert_eq!(w.dim_vector(q), c.dim_vector(q));
        }
    }

    #[test]
    fn crossing_is_symmetric(n in 2usize..6, m in 1usize..4, a in 0usize..30, b in 0usize..30, c in 0usize..30, d in 0usize..30) {
        let model = Model::Disk { n, m };
        let pts = model.disk_points().unwrap();
        let (x, y) = (Arc::disk(a % pts, b % pts), Arc::disk(c % pts, d % pts));
        prop_assert_eq!(cross(&model, &x, &y), cross(&model, &y, &x));
        prop_assert!(!cross(&model, &x, &x));
    }

    #[test]
    fn angulations_survive_rotation(n in 2usize..7, m in 1usize..4, seed in 0u64..1000, k in 0usize..40) {
        let model = Model::Disk { n, m };
        let ang = random_angulation(&model, seed).unwrap();
        prop_assert!(is_angulation(&ang).unwrap().ok);
        let turned = rotate(&ang, k);
        for arc in &turned.arcs {
            prop_assert!(is_m_diagonal(&model, arc).unwrap());
        }
        let check = is_angulation(&turned).unwrap();
        prop_assert!(check.ok, "{:?}", check.reason);
        prop_assert_eq!(random_angulation(&model, seed).unwrap(), ang);
    }

    #[test]
    fn annulus_samples_are_angulations(p in 1usize..5, q in 1usize..5, m in 1usize..4, seed in 0u64..200) {
        let model = Model::Annulus { p, q, m };
        let ang = random_angulation(&model, seed).unwrap();
        let check = is_angulation(&ang).unwrap();
        prop_assert!(check.ok, "{:?}", check.reason);
    }

    #[test]
    fn cyclic_derivative_is_linear(c1 in proptest::collection::vec(-5i64..5, 6), c2 in proptest::collection::vec(-5i64..5, 6)) {
        let bq = fixtures::ej8_corrected();
        let q = bq.quiver();
        let cycles = saturated_cycles(&bq);
        let (mut w1, mut w2) = (Potential::default(), Potential::default());
        for (i, cyc) in cycles.iter().enumerate() {
            w1.add_cycle(q, &cyc.arrows, c1[i % c1.len()]).unwrap();
            let mut turned = cyc.arrows.clone();
            turned.rotate_left(i % cyc.arrows.len());
            w2.add_cycle(q, &turned, c2[i % c2.len()]).unwrap();
        }
        for a in q.arrows() {
            let sum = cyclic_derivative(&w1.plus(&w2), a);
            prop_assert_eq!(sum, cyclic_derivative(&w1, a).plus(&cyclic_derivative(&w2, a)));
        }
    }

    #[test]
    fn generators_are_deterministic_and_round_trip(seed in 0u64..10_000) {
        let inst = random_block_instance(seed, 6, 10);
        let text = write_bound_quiver(&inst.glued.bound_quiver);
        prop_assert_eq!(&text, &write_bound_quiver(&random_block_instance(seed, 6, 10).glued.bound_quiver));
        let back = parse_bound_quiver(&text).unwrap().bound_quiver;
        prop_assert_eq!(write_bound_quiver(&back), text);
    }

    #[test]
    fn execution_modes_agree(xs in proptest::collection::vec(0u64..1000, 0..200)) {
        let f = |x: u64| x.wrapping_mul(2654435761) % 97;
        prop_assert_eq!(Execution::Sequential.map(xs.clone(), f), Execution::Parallel.map(xs, f));
    }
}
