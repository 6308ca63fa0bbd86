mod common;

use common::*;
use proptest::prelude::*;
use qdeform_core::params::{reparametrize, validate_positivity, DeformationParams};
use qdeform_core::structure::{bracket, genfun_coeffs, KSign, StructureFunction};

fn agrees(p: DeformationParams, f0: f64) -> Result<(), TestCaseError> {
    let sf = StructureFunction::new(p, f0).unwrap();
    let rec = sf.recurrence_table(200).unwrap();
    for (n, r) in rec.iter().enumerate() {
        let c = sf.closed(n as u32).unwrap();
        prop_assert!(rel_close(c, *r, 1e-10), "n={} closed={} rec={}", n, c, r);
    }
    Ok(())
}

fn satisfies_recurrence(p: DeformationParams) -> Result<(), TestCaseError> {
    let sf = StructureFunction::fock(p);
    for n in 0..200u32 {
        let (a, b) = (sf.closed(n).unwrap(), sf.closed(n + 1).unwrap());
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
        let src = p.pow(p.alpha() * f64::from(n) + p.beta());
        let r = b - p.q_gamma() * a - (1.0 + 2.0 * p.nu() * parity) * src;
        prop_assert!(r.abs() <= 1e-10 * b.abs().max(1.0), "n={} r={}", n, r);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_matches_recurrence_gamma_dominant(p in gamma_dominant(), f0 in 0.0f64..2.0) {
        agrees(p, f0)?;
    }

    #[test]
    fn closed_matches_recurrence_alpha_dominant(p in alpha_dominant(), f0 in 0.0f64..2.0) {
        agrees(p, f0)?;
    }

    #[test]
    fn closed_matches_recurrence_balanced(p in balanced(), f0 in 0.0f64..2.0) {
        agrees(p, f0)?;
    }

    #[test]
    fn closed_form_solves_recurrence(p in prop_oneof![gamma_dominant(), alpha_dominant(), balanced()]) {
        satisfies_recurrence(p)?;
    }

    #[test]
    fn positive_verdict_means_positive_f(p in prop_oneof![gamma_dominant(), alpha_dominant(), balanced()]) {
        prop_assert!(validate_positivity(&p).positive);
        let rec = StructureFunction::fock(p).recurrence_table(200).unwrap();
        prop_assert!(rec[1..].iter().all(|v| *v > 0.0));
    }

    #[test]
    fn upper_bound_is_sharp(p in alpha_dominant(), excess in 0.05f64..1.0) {
        // Past the window the odd levels eventually turn negative.
        let v = validate_positivity(&p);
        let high = v.bound_high.unwrap();
        let q = p.with_nu(high + excess).unwrap();
        prop_assert!(!validate_positivity(&q).positive);
        let sf = StructureFunction::fock(q);
        let neg = (1..=4000u32).any(|n| sf.closed_log(n).sign() < 0);
        prop_assert!(neg);
    }

    #[test]
    fn genfun_coefficients_are_brackets(
        p in prop_oneof![gamma_dominant(), alpha_dominant(), balanced()],
        plus in any::<bool>(),
    ) {
        let k = if plus { KSign::Plus } else { KSign::Minus };
        let c = genfun_coeffs(&p, k, 30).unwrap();
        prop_assert_eq!(c[0], 0.0);
        for n in 1..=30u32 {
            let b = bracket(&p, n, k).unwrap().value;
            prop_assert!(rel_close(c[n as usize], b, 1e-10), "n={} {} vs {}", n, c[n as usize], b);
        }
    }

    #[test]
    fn reparametrization_round_trips(q in base(), a in -3.0f64..3.0, b in -3.0f64..3.0, g in -3.0f64..3.0) {
        let p = DeformationParams::new(q, a, b, g, 0.2).unwrap();
        let back = reparametrize(&p).to_params(0.2).unwrap();
        for (x, y) in [(back.q(), q), (back.alpha(), a), (back.gamma(), g), (back.beta(), b)] {
            prop_assert!((x - y).abs() <= 1e-14 * y.abs().max(1.0), "{} vs {}", x, y);
        }
    }
}
