use proptest::prelude::*;
use qdeform_core::qhermite::{
    default_k_max, h_poly, jacobi_eigs, orthogonality_gram, p_poly, q_spectrum, HMode,
    HermiteFamilyParams, JacobiOperator,
};
use qdeform_core::structure::StructureFunction;

fn restricted() -> impl Strategy<Value = HermiteFamilyParams> {
    (0.3f64..0.9, -1.0f64..1.0, 1.2f64..3.0)
        .prop_map(|(q, b, c)| HermiteFamilyParams::restricted(q, b, c).unwrap())
}

fn coeff(fp: &HermiteFamilyParams, n: u32) -> f64 {
    let n = f64::from(n);
    fp.q().powf(2.0 * fp.a() * n + fp.b()) * (1.0 - fp.qprime().powf(n))
}

/// Magnitude bound for `h_n(x)`: the recurrence with every sign made positive.
fn majorant(fp: &HermiteFamilyParams, n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x.abs());
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let next = x.abs() * cur + coeff(fp, k).abs() * prev;
        prev = cur;
        cur = next;
    }
    cur.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_modes_agree(fp in restricted(), x in -2.0f64..2.0) {
        for n in 0..=30 {
            let r = h_poly(&fp, n, x, HMode::Recurrence).unwrap();
            let e = h_poly(&fp, n, x, HMode::ExplicitSum).unwrap();
            let g = h_poly(&fp, n, x, HMode::Hypergeometric).unwrap();
            let scale = r.abs().max(1e-300);
            let floor = 1e-13 * majorant(&fp, n, x);
            prop_assert!((r - e).abs() <= 1e-9 * scale + floor, "n={} {} {}", n, r, e);
            prop_assert!((r - g).abs() <= 1e-9 * scale + floor, "n={} {} {}", n, r, g);
        }
    }

    #[test]
    fn explicit_sum_satisfies_recurrence(fp in restricted(), x in -2.0f64..2.0) {
        for n in 1..30 {
            let h = |k| h_poly(&fp, k, x, HMode::ExplicitSum).unwrap();
            let res = h(n + 1) - x * h(n) + coeff(&fp, n) * h(n - 1);
            prop_assert!(res.abs() <= 1e-10 * majorant(&fp, n + 1, x), "n={} res={}", n, res);
        }
    }

    #[test]
    fn p_three_term_recurrence(fp in restricted(), x in -2.0f64..2.0) {
        let sf = StructureFunction::fock(fp.to_deformation());
        let r = |n: u32| sf.closed(n + 1).unwrap().sqrt();
        let p = |n: u32| p_poly(&fp, n, x).unwrap();
        for n in 1..=25 {
            let res = x * p(n) - r(n - 1) * p(n - 1) - r(n) * p(n + 1);
            let scale = (x * p(n)).abs() + (r(n - 1) * p(n - 1)).abs() + (r(n) * p(n + 1)).abs();
            prop_assert!(res.abs() <= 1e-9 * scale.max(1.0), "n={} res={}", n, res);
        }
    }

    #[test]
    fn p_orthonormal(fp in restricted()) {
        let g = orthogonality_gram(&fp, 8, default_k_max(fp.qprime())).unwrap();
        for (m, row) in g.iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                let want = if m == n { 1.0 } else { 0.0 };
                prop_assert!((v - want).abs() <= 1e-7, "({},{}) = {}", m, n, v);
            }
        }
    }

    #[test]
    fn finite_sections_approach_the_points(fp in restricted()) {
        let s = q_spectrum(&fp, 2).unwrap();
        let mut last = f64::INFINITY;
        for dim in [25usize, 50, 100, 200] {
            let eigs = jacobi_eigs(&JacobiOperator::from_family(&fp, dim).unwrap());
            let top = eigs[dim - 1];
            let gap = (top - s.kappa).abs();
            prop_assert!(gap <= last + 1e-12, "dim={} gap={} last={}", dim, gap, last);
            last = gap;
            for (lo, hi) in eigs.iter().zip(eigs.iter().rev()) {
                prop_assert!((lo + hi).abs() <= 1e-10 * s.kappa.max(1.0));
            }
        }
        prop_assert!(last <= 1e-6 * s.kappa.max(1.0), "gap {}", last);
    }
}

#[test]
fn discrete_q_hermite_section() {
    let q: f64 = 0.5;
    let fp = HermiteFamilyParams::new(q, 0.5, -1.0, 2.0).unwrap();
    let eigs = jacobi_eigs(&JacobiOperator::from_family(&fp, 200).unwrap());
    for k in 0..3 {
        let want = q.powi(k) / (1.0 - q).sqrt();
        assert!((eigs[199 - k as usize] - want).abs() <= 1e-6);
        assert!((eigs[k as usize] + want).abs() <= 1e-6);
    }
}
