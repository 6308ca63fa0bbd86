#![allow(dead_code)]

use proptest::prelude::*;
use qdeform_core::DeformationParams;

/// q away from 1 on both sides.
pub fn base() -> impl Strategy<Value = f64> {
    prop_oneof![0.4f64..0.95, 1.05f64..2.2]
}

/// Parameters with `q^γ > q^α` and a positive structure function.
pub fn gamma_dominant() -> impl Strategy<Value = DeformationParams> {
    (
        base(),
        -1.2f64..1.2,
        -0.5f64..0.5,
        0.05f64..1.0,
        -0.45f64..1.5,
    )
        .prop_map(|(q, alpha, beta, gap, nu)| {
            // q^γ > q^α  ⇔  (γ − α) ln q > 0
            let gamma = if q > 1.0 { alpha + gap } else { alpha - gap };
            DeformationParams::new(q, alpha, beta, gamma, nu).unwrap()
        })
}

/// Parameters with `q^γ < q^α` and `ν` well inside the positivity window.
pub fn alpha_dominant() -> impl Strategy<Value = DeformationParams> {
    (
        base(),
        -1.2f64..1.2,
        -0.5f64..0.5,
        0.05f64..1.0,
        0.1f64..0.9,
    )
        .prop_map(|(q, alpha, beta, gap, frac)| {
            let gamma = if q > 1.0 { alpha - gap } else { alpha + gap };
            let p = DeformationParams::new(q, alpha, beta, gamma, 0.0).unwrap();
            let (g, h) = (p.q_gamma(), p.q_alpha());
            let high = -(g + h) / (2.0 * (g - h));
            let nu = -0.5 + frac * (high + 0.5);
            p.with_nu(nu).unwrap()
        })
}

/// `α = γ` with `1 + 2ν > 0`.
pub fn balanced() -> impl Strategy<Value = DeformationParams> {
    (base(), -1.2f64..1.2, -0.5f64..0.5, -0.45f64..1.5)
        .prop_map(|(q, a, beta, nu)| DeformationParams::new(q, a, beta, a, nu).unwrap())
}

/// Both `q^γ, q^α ≤ 1`, so `f` stays bounded and absolute residuals are
/// meaningful. `which` picks the regime.
pub fn bounded(which: bool) -> impl Strategy<Value = DeformationParams> {
    (
        0.4f64..0.95,
        0.0f64..1.0,
        -0.5f64..0.5,
        0.1f64..1.0,
        0.1f64..0.9,
    )
        .prop_map(move |(q, lo, beta, gap, frac)| {
            let (alpha, gamma) = if which {
                (lo + gap, lo)
            } else {
                (lo, lo + gap)
            };
            let p = DeformationParams::new(q, alpha, beta, gamma, 0.0).unwrap();
            let (g, h) = (p.q_gamma(), p.q_alpha());
            let nu = if g > h {
                -0.45 + frac
            } else {
                let high = -(g + h) / (2.0 * (g - h));
                -0.5 + frac * (high + 0.5)
            };
            p.with_nu(nu).unwrap()
        })
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
