//! The structure function `f(n)`, the bracket `[n; α, γ; νK]` and its
//! generating function.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::logreal::LogReal;
use crate::math;
use crate::params::{special_case_params, DeformationParams, SpecialCase};

/// Relative gap `|q^α − q^γ| / (q^α + q^γ)` below which the `α ≠ γ` branch
/// is flagged as ill-conditioned.
pub const CONDITION_THRESHOLD: f64 = 1e-12;

/// Solution of `x_{n+1} = g x_n + (1 + (−1)^n B) P h^n` with `x_0 = start`,
/// where `g = q^γ`, `h = q^α`. Both the structure function and the general
/// eigenvalue sequence `λ_n` have this shape.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FirstOrderSolution {
    pub ln_q: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub start: f64,
    pub amplitude: f64,
    pub parity_amp: f64,
}

impl FirstOrderSolution {
    fn balanced(&self) -> bool {
        self.alpha == self.gamma
    }

    fn g(&self) -> f64 {
        math::qpow(self.ln_q, self.gamma)
    }

    fn h(&self) -> f64 {
        math::qpow(self.ln_q, self.alpha)
    }

    /// Plain floating evaluation; may be non-finite past the range.
    pub fn eval(&self, n: i64) -> f64 {
        let nf = n as f64;
        let gn = math::qpow(self.ln_q, self.gamma * nf);
        let p = self.amplitude;
        let b = self.parity_amp;
        if self.balanced() {
            let gm1 = math::qpow(self.ln_q, self.gamma * (nf - 1.0));
            let odd = if n.rem_euclid(2) == 1 { 1.0 } else { 0.0 };
            self.start * gn + p * gm1 * (nf + b * odd)
        } else {
            let (g, h) = (self.g(), self.h());
            let hn = math::qpow(self.ln_q, self.alpha * nf);
            let s = math::parity(n);
            self.start * gn + p * ((gn - hn) / (g - h) + b * (gn - s * hn) / (g + h))
        }
    }

    /// Evaluation in `(sign, ln|x|)` form, valid far beyond the float range.
    pub fn eval_log(&self, n: i64) -> LogReal {
        let nf = n as f64;
        let p = self.amplitude;
        let b = self.parity_amp;
        if self.balanced() {
            let odd = if n.rem_euclid(2) == 1 { 1.0 } else { 0.0 };
            let g = self.g();
            let coef = self.start * g + p * (nf + b * odd);
            let c = LogReal::from_f64(coef);
            c * LogReal::from_parts(1, self.gamma * (nf - 1.0) * self.ln_q)
        } else {
            let (g, h) = (self.g(), self.h());
            let s = math::parity(n);
            let cg = self.start + p / (g - h) + p * b / (g + h);
            let ch = p / (g - h) + s * p * b / (g + h);
            let tg = LogReal::from_f64(cg) * LogReal::from_parts(1, self.gamma * nf * self.ln_q);
            let th = LogReal::from_f64(ch) * LogReal::from_parts(1, self.alpha * nf * self.ln_q);
            tg - th
        }
    }

    /// Floating value when representable, otherwise the log-space value.
    pub fn eval_any(&self, n: i64) -> LogReal {
        let v = self.eval(n);
        if v.is_finite() {
            LogReal::from_f64(v)
        } else {
            self.eval_log(n)
        }
    }
}

/// The structure function with its initial value `f(0) = f0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureFunction {
    params: DeformationParams,
    f0: f64,
}

/// Raised alongside closed-form values when `q^α` and `q^γ` nearly coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionWarning {
    pub relative_gap: f64,
}

impl StructureFunction {
    pub fn new(params: DeformationParams, f0: f64) -> Result<Self> {
        if !(f0.is_finite() && f0 >= 0.0) {
            return Err(invalid(alloc::format!(
                "f0 must be a finite real >= 0, got {f0}"
            )));
        }
        Ok(StructureFunction { params, f0 })
    }

    /// The Fock convention `f(0) = 0`.
    pub fn fock(params: DeformationParams) -> Self {
        StructureFunction { params, f0: 0.0 }
    }

    pub fn params(&self) -> &DeformationParams {
        &self.params
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }

    pub(crate) fn solution(&self) -> FirstOrderSolution {
        let p = &self.params;
        FirstOrderSolution {
            ln_q: p.ln_q(),
            alpha: p.alpha(),
            gamma: p.gamma(),
            start: self.f0,
            amplitude: p.pow(p.beta()),
            parity_amp: 2.0 * p.nu(),
        }
    }

    /// `f(n)` by iterating `f(k+1) = q^γ f(k) + (1 + 2ν(−1)^k) q^{αk+β}`.
    pub fn recurrence(&self, n: u32) -> Result<f64> {
        Ok(*self.recurrence_table(n)?.last().unwrap_or(&self.f0))
    }

    /// `f(0), …, f(n_max)` by the recurrence.
    pub fn recurrence_table(&self, n_max: u32) -> Result<Vec<f64>> {
        let p = &self.params;
        let ln_q = p.ln_q();
        let g = p.q_gamma();
        let two_nu = 2.0 * p.nu();
        let mut out = Vec::with_capacity(n_max as usize + 1);
        let mut f = self.f0;
        out.push(f);
        for k in 0..n_max {
            let kk = i64::from(k);
            let src = math::qpow(ln_q, p.alpha() * kk as f64 + p.beta());
            f = g * f + (1.0 + two_nu * math::parity(kk)) * src;
            if !f.is_finite() {
                return Err(Error::Overflow {
                    what: "f recurrence",
                    n: kk + 1,
                });
            }
            out.push(f);
        }
        Ok(out)
    }

    /// `f(n)` from the two-branch closed form.
    pub fn closed(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Ok(self.f0);
        }
        let sol = self.solution();
        let v = sol.eval(i64::from(n));
        if v.is_finite() {
            return Ok(v);
        }
        sol.eval_log(i64::from(n)).finite().ok_or(Error::Overflow {
            what: "f closed form",
            n: i64::from(n),
        })
    }

    /// `f(n)` in log space; never overflows.
    pub fn closed_log(&self, n: u32) -> LogReal {
        if n == 0 {
            return LogReal::from_f64(self.f0);
        }
        self.solution().eval_any(i64::from(n))
    }

    /// Reports near-coincidence of `q^α` and `q^γ` in the `α ≠ γ` branch.
    pub fn condition_warning(&self) -> Option<ConditionWarning> {
        let p = &self.params;
        if p.is_balanced() {
            return None;
        }
        let (g, h) = (p.q_gamma(), p.q_alpha());
        let gap = (g - h).abs() / (g + h);
        (gap < CONDITION_THRESHOLD).then_some(ConditionWarning { relative_gap: gap })
    }
}

/// `νK ↦ ±ν`: the eigenvalue sign of `K` substituted into the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSign {
    Plus,
    Minus,
}

impl KSign {
    pub fn value(self) -> f64 {
        match self {
            KSign::Plus => 1.0,
            KSign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketValue {
    pub n: u32,
    pub k_sign: KSign,
    pub value: f64,
}

/// The two pieces of `[n; α, γ; νK] = c1 + 2νK·c2`.
pub(crate) fn bracket_parts(p: &DeformationParams, n: u32) -> (f64, f64) {
    let ln_q = p.ln_q();
    let nf = f64::from(n);
    let s = math::parity(i64::from(n));
    if p.is_balanced() {
        let hm1 = math::qpow(ln_q, p.alpha() * (nf - 1.0));
        (nf * hm1, hm1 * (1.0 - s) / 2.0)
    } else {
        let (g, h) = (p.q_gamma(), p.q_alpha());
        let gn = math::qpow(ln_q, p.gamma() * nf);
        let hn = math::qpow(ln_q, p.alpha() * nf);
        ((gn - hn) / (g - h), (gn - s * hn) / (g + h))
    }
}

/// `[n; α, γ; νK]` with `K` replaced by `k_sign`.
pub fn bracket(p: &DeformationParams, n: u32, k_sign: KSign) -> Result<BracketValue> {
    if n == 0 {
        return Err(invalid("bracket needs n >= 1"));
    }
    let (c1, c2) = bracket_parts(p, n);
    let value = c1 + 2.0 * p.nu() * k_sign.value() * c2;
    if !value.is_finite() {
        return Err(Error::Overflow {
            what: "bracket",
            n: i64::from(n),
        });
    }
    Ok(BracketValue { n, k_sign, value })
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| (0..=n).map(|j| a[j] * b[n - j]).sum())
        .collect()
}

fn geometric(ratio_ln: f64, sign: f64, len: usize) -> Vec<f64> {
    (0..len)
        .map(|j| {
            let s = if j % 2 == 1 { sign } else { 1.0 };
            s * math::exp(ratio_ln * j as f64)
        })
        .collect()
}

/// Maclaurin coefficients `0..=n_max` of the bracket generating function,
/// by formal power-series convolution.
pub fn genfun_coeffs(p: &DeformationParams, k_sign: KSign, n_max: u32) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Err(invalid("genfun_coeffs needs n_max >= 1"));
    }
    let len = n_max as usize;
    let ln_q = p.ln_q();
    let nuk = 2.0 * p.nu() * k_sign.value();
    let gs = geometric(p.gamma() * ln_q, 1.0, len);
    let tail: Vec<f64> = if p.is_balanced() {
        // z/(1 − gz)² + 2νk z/(1 − g²z²)
        let sq = convolve(&gs, &gs);
        sq.iter()
            .enumerate()
            .map(|(j, v)| if j % 2 == 0 { v + nuk * gs[j] } else { *v })
            .collect()
    } else {
        // z/(1 − gz) · [1/(1 − hz) + 2νk/(1 + hz)]
        let hs = geometric(p.alpha() * ln_q, 1.0, len);
        let hm = geometric(p.alpha() * ln_q, -1.0, len);
        let inner: Vec<f64> = hs.iter().zip(&hm).map(|(x, y)| x + nuk * y).collect();
        convolve(&gs, &inner)
    };
    let mut out = vec![0.0];
    out.extend(tail);
    if let Some(n) = out.iter().position(|v| !v.is_finite()) {
        return Err(Error::Overflow {
            what: "generating function",
            n: n as i64,
        });
    }
    Ok(out)
}

/// Largest relative deviation `|f(n+s) − catalog(n)| / max(1, |catalog(n)|)`
/// over `0 ≤ n ≤ n_max`, with `s` the catalog index shift.
pub fn reduction_deviation(case: &SpecialCase, n_max: u32) -> Result<f64> {
    let params = special_case_params(case)?;
    let sf = StructureFunction::fock(params);
    let shift = case.catalog_shift();
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let Some(cat) = case.catalog_f(n) else {
            return Err(invalid("no catalog formula for this case"));
        };
        let unified = sf.closed(n + shift)?;
        worst = worst.max((unified - cat).abs() / cat.abs().max(1.0));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: f64, a: f64, b: f64, g: f64, nu: f64) -> DeformationParams {
        DeformationParams::new(q, a, b, g, nu).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn base_cases() {
        let sf = StructureFunction::new(p(0.8, 0.3, -0.2, 1.1, 0.25), 0.7).unwrap();
        assert_eq!(sf.recurrence(0).unwrap(), 0.7);
        assert_eq!(sf.closed(0).unwrap(), 0.7);
        let sf = StructureFunction::fock(p(0.8, 0.3, -0.2, 1.1, 0.25));
        let expect = 1.5 * 0.8f64.powf(-0.2);
        assert!(close(sf.recurrence(1).unwrap(), expect, 1e-15));
        assert!(close(sf.closed(1).unwrap(), expect, 1e-15));
    }

    #[test]
    fn frozen_regression_value() {
        // Fifth iterate computed independently in 30-digit arithmetic.
        let sf = StructureFunction::fock(p(0.8, 0.3, -0.2, 1.1, 0.25));
        let x5 = 3.196_029_892_075_434_8;
        assert!(close(sf.recurrence(5).unwrap(), x5, 1e-14));
        assert!(close(sf.closed(5).unwrap(), x5, 1e-13));
    }

    #[test]
    fn closed_form_examples() {
        let sf = StructureFunction::fock(p(0.5, 0.0, 0.0, 1.0, 0.0));
        assert!(close(sf.closed(3).unwrap(), 1.75, 1e-15));
        let sf = StructureFunction::fock(p(2.0, 1.0, 0.0, 1.0, 0.5));
        assert!(close(sf.closed(2).unwrap(), 4.0, 1e-15));
        assert!(close(sf.recurrence(2).unwrap(), 4.0, 1e-15));
    }

    #[test]
    fn negative_f0_rejected() {
        assert!(StructureFunction::new(p(2.0, 0.0, 0.0, 1.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn recurrence_reports_overflow() {
        let sf = StructureFunction::fock(p(10.0, 0.0, 0.0, 2.0, 0.0));
        assert!(matches!(sf.recurrence(400), Err(Error::Overflow { .. })));
        assert!(matches!(sf.closed(400), Err(Error::Overflow { .. })));
        let l = sf.closed_log(400);
        // f(n) ≈ 100^n / 99 for q^γ = 100.
        let expect = 800.0 * core::f64::consts::LN_10 - math::ln(99.0);
        assert!((l.ln_abs() - expect).abs() < 1e-10);
        assert_eq!(l.sign(), 1);
    }

    #[test]
    fn log_path_agrees_in_range() {
        for params in [
            p(1.3, 0.2, 0.1, 0.7, 0.3),
            p(0.6, 1.0, -0.5, 0.4, 0.2),
            p(1.7, 0.5, 0.2, 0.5, -0.2),
        ] {
            let sf = StructureFunction::new(params, 0.4).unwrap();
            for n in 1..60 {
                let a = sf.closed(n).unwrap();
                let b = sf.solution().eval_log(i64::from(n)).to_f64();
                assert!(close(b, a, 1e-11), "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn condition_warning_fires_near_degeneracy() {
        let sf = StructureFunction::fock(p(2.0, 0.5, 0.0, 0.5 + 1e-14, 0.0));
        assert!(sf.condition_warning().is_some());
        let sf = StructureFunction::fock(p(2.0, 0.5, 0.0, 0.5, 0.0));
        assert!(sf.condition_warning().is_none());
    }

    #[test]
    fn bracket_examples() {
        let pp = p(1.4, 0.3, 0.0, 0.9, 0.35);
        for k in [KSign::Plus, KSign::Minus] {
            let b = bracket(&pp, 1, k).unwrap();
            assert!(close(b.value, 1.0 + 0.7 * k.value(), 1e-15));
        }
        let pp = p(1.4, 0.3, 0.0, 0.9, 0.0);
        let (g, h) = (pp.q_gamma(), pp.q_alpha());
        let b = bracket(&pp, 3, KSign::Plus).unwrap();
        assert!(close(b.value, (g * g * g - h * h * h) / (g - h), 1e-14));
        assert!(bracket(&pp, 0, KSign::Plus).is_err());
    }

    #[test]
    fn bracket_frozen_value() {
        // Evaluated independently with 30-digit arithmetic.
        let b = bracket(&p(0.7, 0.2, 0.0, 1.0, 0.3), 4, KSign::Minus).unwrap();
        assert!(close(b.value, BRACKET_Q07_N4_MINUS, 1e-14), "{}", b.value);
    }

    const BRACKET_Q07_N4_MINUS: f64 = 2.401_743_780_176_743;

    #[test]
    fn genfun_low_order() {
        let pp = p(0.9, 0.4, 0.0, 1.3, 0.2);
        for k in [KSign::Plus, KSign::Minus] {
            let c = genfun_coeffs(&pp, k, 5).unwrap();
            assert_eq!(c.len(), 6);
            assert_eq!(c[0], 0.0);
            assert!(close(c[1], 1.0 + 0.4 * k.value(), 1e-15));
        }
    }

    #[test]
    fn genfun_matches_bracket_balanced() {
        let pp = p(1.2, 0.6, 0.0, 0.6, 0.3);
        let c = genfun_coeffs(&pp, KSign::Minus, 20).unwrap();
        for n in 1..=20 {
            let b = bracket(&pp, n, KSign::Minus).unwrap().value;
            assert!(close(c[n as usize], b, 1e-12), "n={n}");
        }
    }

    #[test]
    fn catalog_reductions() {
        let cases = [
            SpecialCase::ArikCoon { q: 0.5 },
            SpecialCase::ArikCoon { q: 1.3 },
            SpecialCase::BiedenharnMacfarlane { q: 1.1 },
            SpecialCase::ChungEtAl {
                q: 0.9,
                alpha: 0.4,
                beta: 0.3,
            },
            SpecialCase::ChungEtAl {
                q: 0.9,
                alpha: 1.0,
                beta: 0.3,
            },
            SpecialCase::Borzov {
                q: 1.05,
                alpha: 0.4,
                beta: -0.3,
                gamma: 0.9,
            },
            SpecialCase::Borzov {
                q: 0.95,
                alpha: 0.7,
                beta: 0.1,
                gamma: 0.7,
            },
            SpecialCase::NuModified { nu: 0.3 },
            SpecialCase::QNu { q: 1.1, nu: 0.2 },
        ];
        for c in cases {
            let d = reduction_deviation(&c, 100).unwrap();
            assert!(d <= 1e-10, "{}: {d}", c.name());
        }
    }
}
