mod common;

use common::*;
use proptest::prelude::*;
use qdeform_core::fock::{
    build_fock, casimir_c3, fock_lambda, fock_rep, verify_relations, verify_useful_formula, Parity,
    Relation,
};
use qdeform_core::DeformationParams;

fn relations_hold(p: DeformationParams, dim: usize) -> Result<(), TestCaseError> {
    let rep = fock_rep(&p, dim).unwrap();
    let r = verify_relations(&rep, &p);
    prop_assert_eq!(r.checked.len(), 6);
    for c in &r.checked {
        prop_assert!(c.max_abs_residual_inner <= 1e-10, "{:?}", c);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relations_gamma_dominant(p in bounded(true), dim in prop_oneof![Just(8usize), Just(32), Just(128)]) {
        relations_hold(p, dim)?;
    }

    #[test]
    fn relations_alpha_dominant(p in bounded(false), dim in prop_oneof![Just(8usize), Just(32), Just(128)]) {
        relations_hold(p, dim)?;
    }

    #[test]
    fn power_identity(p in prop_oneof![bounded(true), bounded(false)], n in 1u32..=6) {
        let rep = fock_rep(&p, 24).unwrap();
        let r = verify_useful_formula(&rep, &p, n).unwrap();
        prop_assert!(r.max_abs_residual_inner <= 1e-9, "{:?}", r);
    }

    #[test]
    fn casimir_is_central_and_vanishes(
        p in prop_oneof![bounded(true), gamma_dominant(), balanced()],
        dim in prop_oneof![Just(8usize), Just(32)],
    ) {
        let rep = fock_rep(&p, dim).unwrap();
        let c = casimir_c3(&rep, &p).unwrap();
        // The diagonal cancels terms of size q^{-γn} λ_n, which grow without bound in some regimes.
        let big = rep.lambda().iter().enumerate()
            .map(|(n, l)| l.abs() * p.q().powf(-p.gamma() * n as f64))
            .fold(1.0, f64::max);
        let amax = rep.lambda().iter().fold(1.0f64, |m, l| m.max(l.abs().sqrt()));
        let tol = 1e-10 * big * amax;
        prop_assert!(c.lower.max_abs_residual_inner <= tol, "{:?} tol {}", c.lower, tol);
        prop_assert!(c.raise.max_abs_residual_inner <= tol, "{:?} tol {}", c.raise, tol);
        prop_assert!(c.spread <= 1e-10 * big, "spread {}", c.spread);
        prop_assert!(c.diagonal[0].abs() <= 1e-10);
    }

    #[test]
    fn perturbing_a_level_is_detected(p in bounded(false), idx in 1usize..7, sign in any::<bool>()) {
        let mut lambda = fock_lambda(&p, 16).unwrap();
        lambda[idx] += if sign { 1e-3 } else { -1e-3 * lambda[idx].min(1.0) };
        let rep = build_fock(&p, 0.0, 2.0 * p.nu(), &lambda, 16, Parity::Include).unwrap();
        let r = verify_relations(&rep, &p);
        let d = r.checked.iter().find(|c| c.relation == Relation::Deformed).unwrap();
        prop_assert!(d.max_abs_residual_inner >= 1e-4 * lambda[idx].min(1.0));
    }
}

#[test]
fn sample_relation_residuals() {
    let p = DeformationParams::new(0.6, 0.2, 0.0, 1.0, 0.2).unwrap();
    let rep = fock_rep(&p, 32).unwrap();
    assert!(verify_relations(&rep, &p).max_inner() <= 1e-10);
    for n in [2, 5] {
        let dim = if n == 2 { 24 } else { 40 };
        let rep = fock_rep(&p, dim).unwrap();
        assert!(
            verify_useful_formula(&rep, &p, n)
                .unwrap()
                .max_abs_residual_inner
                <= 1e-9
        );
    }
}
