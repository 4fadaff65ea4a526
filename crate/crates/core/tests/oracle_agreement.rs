use gentle_core::field::F10007;
use gentle_core::fixtures;
use gentle_core::repr::Oracle;
use gentle_core::StringAlgebra;

fn string_fixtures() -> Vec<gentle_core::BoundQuiver> {
    vec![fixtures::lin3(), fixtures::a3c(), fixtures::loop1(), fixtures::d6(), fixtures::ej8_corrected()]
}

#[test]
fn combinatorial_syzygy_matches_linear_algebra() {
    for bq in string_fixtures() {
        let alg = StringAlgebra::new(bq.clone()).unwrap();
        let o = Oracle::<F10007>::new(bq.clone()).unwrap();
        for w in alg.enumerate_strings(5) {
            let comb = alg.syzygy(&alg.single(&w), false);
            let exact = o.decompose(&o.syzygy(&o.rep_of_string(&w))).unwrap();
            assert_eq!(comb, exact, "{}: syzygy of {}", bq.name, w.display(alg.quiver()));
        }
    }
}

#[test]
fn combinatorial_tau_matches_linear_algebra() {
    for bq in string_fixtures() {
        let alg = StringAlgebra::new(bq.clone()).unwrap();
        let o = Oracle::<F10007>::new(bq.clone()).unwrap();
        for w in alg.enumerate_strings(5) {
            let exact = o.string_tau(&w).unwrap();
            let comb =
                alg.tau_combinatorial(&w).unwrap_or_else(|| panic!("{}: no surgery for {}", bq.name, w.display(alg.quiver())));
            assert_eq!(comb, exact, "{}: tau of {}", bq.name, w.display(alg.quiver()));
        }
    }
}

#[test]
fn inverse_translate_undoes_translate() {
    for bq in string_fixtures() {
        let alg = StringAlgebra::new(bq.clone()).unwrap();
        for w in alg.enumerate_strings(4) {
            if alg.projective_vertex(&w).is_some() {
                continue;
            }
            let t = alg.tau_combinatorial(&w).unwrap();
            let back: Vec<_> = t.words().map(|v| alg.tau_inverse_combinatorial(v).unwrap()).collect();
            assert_eq!(back.len(), 1);
            assert_eq!(back[0], alg.single(&w), "{}: tau^-1 tau {}", bq.name, w.display(alg.quiver()));
        }
    }
}
