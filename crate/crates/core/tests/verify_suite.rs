use num_complex::Complex64;
use proptest::prelude::*;

use liftspin_core::combinat::r_range;
use liftspin_core::lfactors::{instantiate, spinor_factor, standard_factor, Vars};
use liftspin_core::modforms::eigenform;
use liftspin_core::satake::{ikeda_satake, miyawaki_satake, WeylGenerator};
use liftspin_core::verify::{
    compare_numeric, numeric_alpha_beta, run_symbolic_suite, symbolic_sides, verify_numeric, verify_symbolic, Case,
    IdentityId, Mutation, NumericData, Verdict,
};

fn small_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 2..=4 {
        cases.push(Case {
            id: IdentityId::MainTheorem,
            n,
            k: 6,
        });
        cases.push(Case {
            id: IdentityId::MiyawakiStandard,
            n,
            k: 6,
        });
        cases.push(Case {
            id: IdentityId::C1Frobenius,
            n,
            k: 6,
        });
    }
    for n in 1..=3 {
        cases.push(Case {
            id: IdentityId::IkedaSpinor,
            n,
            k: 6,
        });
        cases.push(Case {
            id: IdentityId::IkedaStandard,
            n,
            k: 6,
        });
    }
    cases.push(Case {
        id: IdentityId::BetaEpsilonMatch,
        n: 4,
        k: 0,
    });
    cases
}

#[test]
fn suite_is_schedule_independent() {
    let cases = small_cases();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| run_symbolic_suite(&cases, &Mutation::None).unwrap());
    let b = four.install(|| run_symbolic_suite(&cases, &Mutation::None).unwrap());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.iter().all(|r| r.passed()));
    let sa = one.install(|| {
        spinor_factor(&miyawaki_satake(4, 8).unwrap())
            .unwrap()
            .to_json(Some(12))
            .unwrap()
    });
    let sb = four.install(|| {
        spinor_factor(&miyawaki_satake(4, 8).unwrap())
            .unwrap()
            .to_json(Some(12))
            .unwrap()
    });
    assert_eq!(serde_json::to_string(&sa).unwrap(), serde_json::to_string(&sb).unwrap());
}

#[test]
fn symbolic_passes_instantiate_to_numeric_passes() {
    for (id, n) in [
        (IdentityId::MainTheorem, 2),
        (IdentityId::MainTheorem, 3),
        (IdentityId::IkedaSpinor, 2),
        (IdentityId::IkedaStandard, 3),
        (IdentityId::MiyawakiStandard, 3),
    ] {
        let sides = symbolic_sides(id, n, 8, &Mutation::None).unwrap();
        for (theta, phi, p) in [(0.4, 1.3, 2u64), (2.0, 0.1, 7), (1.1, 2.9, 53)] {
            let vars = Vars::numeric(Complex64::from_polar(1.0, theta), Complex64::from_polar(1.0, phi), p);
            let (l, r) = (instantiate(&sides.lhs, &vars), instantiate(&sides.rhs, &vars));
            assert!(compare_numeric(&l, &r, 1e-9).unwrap().is_none(), "{id:?} n={n} p={p}");
        }
    }
}

#[test]
fn failing_symbolic_check_fails_numerically() {
    let m = Mutation::Beta { r: 1, m: 1, delta: 1 };
    let sides = symbolic_sides(IdentityId::MainTheorem, 3, 8, &m).unwrap();
    let vars = Vars::numeric(Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, 1.9), 3);
    assert!(
        compare_numeric(&instantiate(&sides.lhs, &vars), &instantiate(&sides.rhs, &vars), 1e-9)
            .unwrap()
            .is_some()
    );
}

#[test]
fn numeric_examples() {
    let f = eigenform(20, 200).unwrap();
    let g = eigenform(12, 200).unwrap();
    let data = NumericData { f: &f, g: Some(&g) };
    for p in [2, 3, 5, 7, 11] {
        let r = verify_numeric(IdentityId::MainTheorem, 2, 10, p, &data).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "p={p}");
    }
    let r = verify_numeric(IdentityId::IkedaStandard, 2, 10, 2, &NumericData { f: &f, g: None }).unwrap();
    assert!(r.passed());
    let r = verify_numeric(IdentityId::IkedaSpinor, 2, 10, 3, &NumericData { f: &f, g: None }).unwrap();
    assert!(r.passed());
    assert!(
        verify_numeric(IdentityId::MainTheorem, 3, 10, 2, &data).is_err(),
        "g has the wrong weight for n = 3"
    );
}

#[test]
fn numeric_sides_ignore_satake_root_choice() {
    let f = eigenform(20, 200).unwrap();
    let g = eigenform(12, 200).unwrap();
    let data = NumericData { f: &f, g: Some(&g) };
    let sides = symbolic_sides(IdentityId::MainTheorem, 2, 10, &Mutation::None).unwrap();
    for p in [2, 5, 13] {
        let (alpha, beta) = numeric_alpha_beta(2, 10, p, &data).unwrap();
        let base = instantiate(&sides.lhs, &Vars::numeric(alpha, beta, p));
        for (x, y) in [(alpha.inv(), beta), (alpha, beta.inv()), (alpha.inv(), beta.inv())] {
            let swapped = instantiate(&sides.lhs, &Vars::numeric(x, y, p));
            assert!(compare_numeric(&base, &swapped, 1e-9).unwrap().is_none(), "p={p}");
            let rhs = instantiate(&sides.rhs, &Vars::numeric(x, y, p));
            assert!(compare_numeric(&base, &rhs, 1e-9).unwrap().is_none(), "p={p}");
        }
    }
}

#[test]
fn example_regrouping_deg5_and_deg7() {
    for id in [IdentityId::ExampleDeg5, IdentityId::ExampleDeg7] {
        let r = verify_symbolic(id, 0, 4, &Mutation::None).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

fn word_strategy(genus: usize) -> impl Strategy<Value = Vec<WeylGenerator>> {
    let g = prop_oneof![
        (1..=genus).prop_map(WeylGenerator::Sigma),
        (1..=genus, 1..=genus).prop_map(|(i, j)| WeylGenerator::Transposition(i, j)),
    ];
    proptest::collection::vec(g, 0..16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn single_beta_perturbation_is_detected(n in 2i64..=4, pick in 0usize..64, up in any::<bool>()) {
        let entries: Vec<(i64, i64)> =
            (1..n).flat_map(|m| r_range(m as u32, (n - 1) as u32).map(move |r| (m, r))).collect();
        let (m, r) = entries[pick % entries.len()];
        let delta = if up { 1 } else { -1 };
        let report = verify_symbolic(IdentityId::MainTheorem, n, 6, &Mutation::Beta { r, m, delta }).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Fail);
        prop_assert_eq!(report.witness.unwrap().t_degree, Some(1));
    }

    #[test]
    fn weyl_words_fix_spinor_roots(word in word_strategy(5), k in 2i64..12) {
        let p = miyawaki_satake(3, k).unwrap();
        let base = spinor_factor(&p).unwrap().canonical_roots();
        // includes i == j transpositions, which act trivially
        let moved = p.apply_weyl_word(&word).unwrap();
        prop_assert_eq!(spinor_factor(&moved).unwrap().canonical_roots(), base);
    }

    #[test]
    fn weyl_words_fix_ikeda_standard(word in word_strategy(4)) {
        let p = ikeda_satake(2, 10).unwrap();
        let base = standard_factor(&p).canonical_roots();
        let moved = p.apply_weyl_word(&word).unwrap();
        prop_assert_eq!(standard_factor(&moved).canonical_roots(), base);
    }
}
