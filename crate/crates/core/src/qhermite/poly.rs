//! `h_n` (generalized discrete q-Hermite I) and the orthonormal `P_n`.

use alloc::vec::Vec;

use super::pochhammer::{qpochhammer, PochLength};
use super::HermiteFamilyParams;
use crate::error::{invalid, Error, Result};
use crate::logreal::LogReal;
use crate::math;

/// Evaluation route for `h_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HMode {
    /// `h_{n+1} = x h_n − q^{2an+b}(1 − q′^n) h_{n−1}`.
    Recurrence,
    /// Terminating sum over `k ≤ n/2`.
    ExplicitSum,
    /// `x^n ₂φ₀(q′^{−n}, q′^{−n+1}; -; q′², q^{2an+b} q′^n / x²)`.
    Hypergeometric,
}

/// `h_n(x)`; the sum forms need `a = (c−1)/2`.
pub fn h_poly(fp: &HermiteFamilyParams, n: u32, x: f64, mode: HMode) -> Result<f64> {
    if !x.is_finite() {
        return Err(invalid("x must be finite"));
    }
    let v = match mode {
        HMode::Recurrence => h_recurrence(fp, n, x),
        HMode::ExplicitSum => {
            fp.require_restricted()?;
            h_explicit(fp, n, x)
        }
        HMode::Hypergeometric => {
            fp.require_restricted()?;
            if x == 0.0 {
                if n % 2 == 1 {
                    0.0
                } else {
                    h_explicit(fp, n, x)
                }
            } else {
                h_hyper(fp, n, x)
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            what: "h_n",
            n: i64::from(n),
        })
    }
}

fn h_coefficient(fp: &HermiteFamilyParams, n: u32) -> f64 {
    let qp = fp.qprime();
    let nf = f64::from(n);
    math::qpow(fp.ln_q(), 2.0 * fp.a * nf + fp.b) * (1.0 - math::qpow(math::ln(qp), nf))
}

pub(crate) fn h_recurrence_table(fp: &HermiteFamilyParams, n_max: u32, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(1.0);
    if n_max >= 1 {
        out.push(x);
    }
    for n in 1..n_max {
        let i = n as usize;
        out.push(x * out[i] - h_coefficient(fp, n) * out[i - 1]);
    }
    out
}

fn h_recurrence(fp: &HermiteFamilyParams, n: u32, x: f64) -> f64 {
    h_recurrence_table(fp, n, x)[n as usize]
}

fn poch(x: f64, qq: f64, n: u32) -> f64 {
    qpochhammer(x, qq, PochLength::Finite(n))
        .map(|p| p.value)
        .unwrap_or(f64::NAN)
}

fn h_explicit(fp: &HermiteFamilyParams, n: u32, x: f64) -> f64 {
    let qp = fp.qprime();
    let ln_qp = math::ln(qp);
    let nf = f64::from(n);
    let top = poch(qp, qp, n);
    let mut sum = 0.0;
    for k in 0..=n / 2 {
        let kf = f64::from(k);
        let ratio = top / (poch(qp * qp, qp * qp, k) * poch(qp, qp, n - 2 * k));
        let expo = (2.0 * fp.a * nf + fp.b) * kf * fp.ln_q() + kf * (kf - nf) * ln_qp;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * ratio * math::exp(expo) * math::powi(x, n - 2 * k);
    }
    sum
}

/// `ln|1 − e^{m·ln q′}|` and its sign.
fn ln_one_minus(m: f64, ln_qp: f64) -> LogReal {
    LogReal::from_f64(1.0) - LogReal::from_parts(1, m * ln_qp)
}

fn h_hyper(fp: &HermiteFamilyParams, n: u32, x: f64) -> f64 {
    let qp = fp.qprime();
    let ln_qp = math::ln(qp);
    let nf = f64::from(n);
    let ln_z = (2.0 * fp.a * nf + fp.b) * fp.ln_q() + nf * ln_qp - 2.0 * math::ln(x.abs());
    // term_k = (a1;Q)_k (a2;Q)_k / (Q;Q)_k · (−1)^k Q^{−k(k−1)/2} z^k
    let mut term = LogReal::ONE;
    let mut sum = LogReal::ONE;
    for k in 1..=n / 2 {
        let j = f64::from(k - 1);
        let a1 = ln_one_minus(-nf + 2.0 * j, ln_qp);
        let a2 = ln_one_minus(-nf + 1.0 + 2.0 * j, ln_qp);
        let qq = ln_one_minus(2.0 * (j + 1.0), ln_qp);
        // Q^{−k(k−1)/2} / Q^{−(k−1)(k−2)/2} = Q^{−(k−1)} = q′^{−2(k−1)}
        let step = LogReal::from_parts(-1, ln_z - 2.0 * j * ln_qp);
        term = term * a1 * a2 * step * LogReal::from_parts(qq.sign(), -qq.ln_abs());
        sum = sum + term;
    }
    let xn = LogReal::from_f64(math::powi(x, n));
    (xn * sum).to_f64()
}

/// `P_n(x) = q^{−an(n+1)/2 − bn/2} (q′;q′)_n^{−1/2} h_n(√(1−q′) x)`; needs
/// `q′ ∈ (0, 1)`.
pub fn p_poly(fp: &HermiteFamilyParams, n: u32, x: f64) -> Result<f64> {
    fp.require_unit_qprime()?;
    let qp = fp.qprime();
    let h = h_poly(fp, n, math::sqrt(1.0 - qp) * x, HMode::Recurrence)?;
    let nf = f64::from(n);
    let pre = math::qpow(fp.ln_q(), -0.5 * fp.a * nf * (nf + 1.0) - 0.5 * fp.b * nf);
    let v = pre * h / math::sqrt(poch(qp, qp, n));
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            what: "P_n",
            n: i64::from(n),
        })
    }
}

/// `P_0(x), …, P_{n_max}(x)` with one pass of the `h` recurrence.
#[cfg(test)]
pub(crate) fn p_table(fp: &HermiteFamilyParams, n_max: u32, x: f64) -> Vec<f64> {
    let qp = fp.qprime();
    let hs = h_recurrence_table(fp, n_max, math::sqrt(1.0 - qp) * x);
    let mut poch_n = 1.0;
    hs.into_iter()
        .enumerate()
        .map(|(n, h)| {
            let nf = n as f64;
            if n > 0 {
                poch_n *= 1.0 - math::qpow(math::ln(qp), nf);
            }
            let pre = math::qpow(fp.ln_q(), -0.5 * fp.a * nf * (nf + 1.0) - 0.5 * fp.b * nf);
            pre * h / math::sqrt(poch_n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::StructureFunction;

    fn fam(q: f64, a: f64, b: f64, c: f64) -> HermiteFamilyParams {
        HermiteFamilyParams::new(q, a, b, c).unwrap()
    }

    #[test]
    fn low_order() {
        let fp = fam(0.6, 0.35, 0.2, 1.7);
        for mode in [HMode::Recurrence, HMode::ExplicitSum, HMode::Hypergeometric] {
            assert_eq!(h_poly(&fp, 0, 0.8, mode).unwrap(), 1.0);
            assert!((h_poly(&fp, 1, 0.8, mode).unwrap() - 0.8).abs() < 1e-15);
            let want = 0.64 - 0.6f64.powf(2.0 * 0.35 + 0.2) * (1.0 - fp.qprime());
            assert!(
                (h_poly(&fp, 2, 0.8, mode).unwrap() - want).abs() < 1e-14,
                "{mode:?}"
            );
        }
    }

    #[test]
    fn standard_discrete_q_hermite() {
        // x h_n = h_{n+1} + q^{n−1}(1 − q^n) h_{n−1}
        let q = 0.7;
        let fp = fam(q, 0.5, -1.0, 2.0);
        for &x in &[-1.3, 0.2, 0.9] {
            let (mut hm, mut h) = (0.0, 1.0);
            for n in 0..20u32 {
                let got = h_poly(&fp, n, x, HMode::Recurrence).unwrap();
                assert!((got - h).abs() <= 1e-13 * h.abs().max(1.0));
                let nf = f64::from(n);
                let next = x * h - q.powf(nf - 1.0) * (1.0 - q.powf(nf)) * hm;
                hm = h;
                h = next;
            }
        }
    }

    #[test]
    fn sum_forms_need_restriction() {
        let fp = fam(0.5, 0.2, 0.4, 1.5);
        assert!(matches!(
            h_poly(&fp, 3, 0.5, HMode::ExplicitSum),
            Err(Error::RestrictionViolated(_))
        ));
        assert!(h_poly(&fp, 3, 0.5, HMode::Recurrence).is_ok());
    }

    #[test]
    fn hypergeometric_at_origin() {
        let fp = fam(0.5, 0.25, 0.3, 1.5);
        assert_eq!(h_poly(&fp, 5, 0.0, HMode::Hypergeometric).unwrap(), 0.0);
        let a = h_poly(&fp, 4, 0.0, HMode::Hypergeometric).unwrap();
        let b = h_poly(&fp, 4, 0.0, HMode::Recurrence).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn p_satisfies_jacobi_recurrence() {
        let fp = fam(0.6, 0.35, 0.2, 1.7);
        let sf = StructureFunction::fock(fp.to_deformation());
        let r: Vec<f64> = (1..=30).map(|n| sf.closed(n).unwrap().sqrt()).collect();
        for &x in &[-1.1, 0.3, 0.75] {
            let ps: Vec<f64> = (0..=26).map(|n| p_poly(&fp, n, x).unwrap()).collect();
            for (a, b) in ps.iter().zip(p_table(&fp, 26, x)) {
                assert!((a - b).abs() <= 1e-14 * a.abs().max(1.0));
            }
            for n in 0..25 {
                let prev = if n == 0 { 0.0 } else { r[n - 1] * ps[n - 1] };
                let res = x * ps[n] - prev - r[n] * ps[n + 1];
                let scale = (x * ps[n]).abs().max(prev.abs()).max(1.0);
                assert!(res.abs() <= 1e-9 * scale, "n={n} x={x}: {res}");
            }
        }
    }

    #[test]
    fn p3_frozen_value() {
        // Jacobi recurrence in 40-digit arithmetic.
        let fp = fam(0.7, 0.5, -1.0, 2.0);
        let v = p_poly(&fp, 3, 1.0).unwrap();
        assert!((v - P3_Q07_X1).abs() < 1e-13, "{v}");
    }

    const P3_Q07_X1: f64 = -1.053_060_646_579_807_2;
}
