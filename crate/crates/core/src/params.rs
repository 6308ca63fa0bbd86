//! The deformation parameter space `(q; α, β, γ; ν)`.

use alloc::format;

use crate::error::{invalid, Result};
use crate::math;

/// The tuple `(q, α, β, γ, ν)` of the defining relation
/// `aa† − q^γ a†a = (1 + 2νK) q^{αN+β}`.
///
/// `q > 0`, `q ≠ 1`; no relation among the other entries is imposed here.
/// Positivity is checked separately by [`validate_positivity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParams {
    q: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    nu: f64,
}

impl DeformationParams {
    pub fn new(q: f64, alpha: f64, beta: f64, gamma: f64, nu: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(invalid(format!("q must be a positive real, got {q}")));
        }
        if q == 1.0 {
            return Err(invalid("q = 1 is excluded"));
        }
        for (name, v) in [
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("nu", nu),
        ] {
            if !v.is_finite() {
                return Err(invalid(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(DeformationParams {
            q,
            alpha,
            beta,
            gamma,
            nu,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Same tuple with a different `ν`.
    pub fn with_nu(&self, nu: f64) -> Result<Self> {
        Self::new(self.q, self.alpha, self.beta, self.gamma, nu)
    }

    pub fn ln_q(&self) -> f64 {
        math::ln(self.q)
    }

    /// `q^x`.
    pub fn pow(&self, x: f64) -> f64 {
        math::qpow(self.ln_q(), x)
    }

    /// `q^γ`.
    pub fn q_gamma(&self) -> f64 {
        self.pow(self.gamma)
    }

    /// `q^α`.
    pub fn q_alpha(&self) -> f64 {
        self.pow(self.alpha)
    }

    /// True when `α` and `γ` are bitwise-equal inputs, selecting the
    /// degenerate branch of every two-branch formula.
    pub fn is_balanced(&self) -> bool {
        self.alpha == self.gamma
    }
}

/// `(τ, ρ, μ, β)` with `q = e^τ`, `ρ = (α+γ)/2`, `μ = (γ−α)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reparametrization {
    pub tau: f64,
    pub rho: f64,
    pub mu: f64,
    pub beta: f64,
}

impl Reparametrization {
    /// Maps back to `(q, α, β, γ)` with the supplied `ν`.
    pub fn to_params(&self, nu: f64) -> Result<DeformationParams> {
        DeformationParams::new(
            math::exp(self.tau),
            self.rho - self.mu,
            self.beta,
            self.rho + self.mu,
            nu,
        )
    }
}

pub fn reparametrize(p: &DeformationParams) -> Reparametrization {
    Reparametrization {
        tau: p.ln_q(),
        rho: 0.5 * (p.alpha + p.gamma),
        mu: 0.5 * (p.gamma - p.alpha),
        beta: p.beta,
    }
}

/// Which of `q^γ`, `q^α` dominates; this decides what positivity requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `q^γ ≥ q^α`: positivity needs only `1 + 2ν > 0`.
    GammaDominant,
    /// `q^γ < q^α`: `ν` must lie in a bounded window.
    AlphaDominant,
    /// The conditions of the applicable regime fail.
    Violated,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::GammaDominant => "gamma-dominant",
            Regime::AlphaDominant => "alpha-dominant",
            Regime::Violated => "violated",
        }
    }
}

/// Outcome of [`validate_positivity`].
///
/// Bounds are on `ν`. The lower bound is always `−1/2`; the upper bound is
/// present only in the alpha-dominant setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityVerdict {
    pub positive: bool,
    pub regime: Regime,
    pub bound_low: f64,
    pub bound_high: Option<f64>,
}

/// Decides whether the Fock structure function is positive for all `n ≥ 1`.
///
/// Even and odd `n` give `f(n) > 0` iff `1 + 2ν > 0` when `q^γ ≥ q^α`, and
/// iff `−1/2 < ν < −(q^γ+q^α) / (2(q^γ−q^α))` when `q^γ < q^α`.
pub fn validate_positivity(p: &DeformationParams) -> PositivityVerdict {
    let g = p.q_gamma();
    let h = p.q_alpha();
    let low = -0.5;
    let ok_low = p.nu > low;
    if p.is_balanced() || g > h {
        PositivityVerdict {
            positive: ok_low,
            regime: if ok_low {
                Regime::GammaDominant
            } else {
                Regime::Violated
            },
            bound_low: low,
            bound_high: None,
        }
    } else {
        let high = -(g + h) / (2.0 * (g - h));
        let positive = ok_low && p.nu < high;
        PositivityVerdict {
            positive,
            regime: if positive {
                Regime::AlphaDominant
            } else {
                Regime::Violated
            },
            bound_low: low,
            bound_high: Some(high),
        }
    }
}

/// Named deformations that embed into the unified family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialCase {
    ArikCoon {
        q: f64,
    },
    BiedenharnMacfarlane {
        q: f64,
    },
    ChungEtAl {
        q: f64,
        alpha: f64,
        beta: f64,
    },
    Borzov {
        q: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
    },
    NuModified {
        nu: f64,
    },
    QNu {
        q: f64,
        nu: f64,
    },
    HermiteFamily {
        q: f64,
        a: f64,
        b: f64,
        c: f64,
    },
}

impl SpecialCase {
    pub fn name(&self) -> &'static str {
        match self {
            SpecialCase::ArikCoon { .. } => "arik-coon",
            SpecialCase::BiedenharnMacfarlane { .. } => "biedenharn-macfarlane",
            SpecialCase::ChungEtAl { .. } => "chung",
            SpecialCase::Borzov { .. } => "borzov",
            SpecialCase::NuModified { .. } => "nu-modified",
            SpecialCase::QNu { .. } => "q-nu",
            SpecialCase::HermiteFamily { .. } => "hermite-family",
        }
    }

    /// The structure function as usually written for this deformation,
    /// independent of the unified closed form. `None` for the Hermite family,
    /// which has no separate catalog entry.
    ///
    /// The ν-modified entry is indexed so that `f_unified(n+1)` corresponds to
    /// `catalog_f(n)`; see [`SpecialCase::catalog_shift`].
    pub fn catalog_f(&self, n: u32) -> Option<f64> {
        let nf = f64::from(n);
        let pw = |q: f64, x: f64| math::qpow(math::ln(q), x);
        let parity = math::parity(i64::from(n));
        Some(match *self {
            SpecialCase::ArikCoon { q } => (1.0 - pw(q, nf)) / (1.0 - q),
            SpecialCase::BiedenharnMacfarlane { q } => (pw(q, nf) - pw(q, -nf)) / (q - 1.0 / q),
            SpecialCase::ChungEtAl { q, alpha, beta } => {
                if alpha == 1.0 {
                    nf * pw(q, nf - 1.0 + beta)
                } else {
                    pw(q, beta) * (pw(q, alpha * nf) - pw(q, nf)) / (pw(q, alpha) - q)
                }
            }
            SpecialCase::Borzov {
                q,
                alpha,
                beta,
                gamma,
            } => {
                if alpha == gamma {
                    nf * pw(q, gamma * (nf - 1.0) + beta)
                } else {
                    pw(q, beta) * (pw(q, alpha * nf) - pw(q, gamma * nf))
                        / (pw(q, alpha) - pw(q, gamma))
                }
            }
            SpecialCase::NuModified { nu } => {
                let k = f64::from(n / 2);
                if n.is_multiple_of(2) {
                    2.0 * k + 1.0 + 2.0 * nu
                } else {
                    2.0 * k + 2.0
                }
            }
            SpecialCase::QNu { q, nu } => {
                (pw(q, nf) - pw(q, -nf)) / (q - 1.0 / q)
                    + 2.0 * nu * (pw(q, nf) - parity * pw(q, -nf)) / (q + 1.0 / q)
            }
            SpecialCase::HermiteFamily { .. } => return None,
        })
    }

    /// Index offset `s` with `f_unified(n + s) = catalog_f(n)`.
    pub fn catalog_shift(&self) -> u32 {
        match self {
            SpecialCase::NuModified { .. } => 1,
            _ => 0,
        }
    }
}

pub fn special_case_params(s: &SpecialCase) -> Result<DeformationParams> {
    match *s {
        SpecialCase::ArikCoon { q } => DeformationParams::new(q, 0.0, 0.0, 1.0, 0.0),
        SpecialCase::BiedenharnMacfarlane { q } => DeformationParams::new(q, -1.0, 0.0, 1.0, 0.0),
        SpecialCase::ChungEtAl { q, alpha, beta } => {
            DeformationParams::new(q, alpha, beta, 1.0, 0.0)
        }
        SpecialCase::Borzov {
            q,
            alpha,
            beta,
            gamma,
        } => DeformationParams::new(q, alpha, beta, gamma, 0.0),
        // Every exponent vanishes, so the base is immaterial; 2 keeps q ≠ 1.
        SpecialCase::NuModified { nu } => DeformationParams::new(2.0, 0.0, 0.0, 0.0, nu),
        SpecialCase::QNu { q, nu } => DeformationParams::new(q, -1.0, 0.0, 1.0, nu),
        SpecialCase::HermiteFamily { q, a, b, c } => {
            if !(q > 0.0 && q < 1.0) {
                return Err(invalid(format!("hermite family needs q in (0,1), got {q}")));
            }
            DeformationParams::new(q, 2.0 * a, 2.0 * a + b, 2.0 * a + c - 1.0, 0.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: f64, a: f64, b: f64, g: f64, nu: f64) -> DeformationParams {
        DeformationParams::new(q, a, b, g, nu).unwrap()
    }

    #[test]
    fn rejects_bad_q() {
        assert!(DeformationParams::new(1.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(DeformationParams::new(0.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(DeformationParams::new(-2.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(DeformationParams::new(f64::NAN, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(DeformationParams::new(2.0, f64::INFINITY, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn positivity_examples() {
        let v = validate_positivity(&p(2.0, 0.0, 0.0, 1.0, 0.1));
        assert!(v.positive);
        assert_eq!(v.regime, Regime::GammaDominant);

        let v = validate_positivity(&p(2.0, 0.0, 0.0, 1.0, -0.6));
        assert!(!v.positive);
        assert_eq!(v.regime, Regime::Violated);

        // q^γ = 0.5 < q^α = 1: window (−1/2, 1.5).
        let v = validate_positivity(&p(0.5, 0.0, 0.0, 1.0, 1.0));
        assert!(v.positive);
        assert_eq!(v.regime, Regime::AlphaDominant);
        assert!((v.bound_high.unwrap() - 1.5).abs() < 1e-15);
        assert!(!validate_positivity(&p(0.5, 0.0, 0.0, 1.0, 1.6)).positive);
    }

    #[test]
    fn balanced_branch_is_gamma_dominant() {
        let v = validate_positivity(&p(0.3, 0.7, 0.0, 0.7, 0.2));
        assert!(v.positive);
        assert_eq!(v.regime, Regime::GammaDominant);
        assert_eq!(v.bound_high, None);
    }

    #[test]
    fn reparametrization_examples() {
        let r = reparametrize(&p(core::f64::consts::E, 0.0, 0.0, 2.0, 0.0));
        assert!((r.tau - 1.0).abs() < 1e-15);
        assert_eq!((r.rho, r.mu), (1.0, 1.0));

        let r = reparametrize(&p(1.5, 0.7, 0.0, 0.7, 0.0));
        assert_eq!(r.mu, 0.0);
        assert_eq!(r.rho, 0.7);
    }

    #[test]
    fn special_case_mappings() {
        let m = special_case_params(&SpecialCase::ArikCoon { q: 0.5 }).unwrap();
        assert_eq!(m, p(0.5, 0.0, 0.0, 1.0, 0.0));
        let m = special_case_params(&SpecialCase::BiedenharnMacfarlane { q: 2.0 }).unwrap();
        assert_eq!(m, p(2.0, -1.0, 0.0, 1.0, 0.0));
        let m = special_case_params(&SpecialCase::HermiteFamily {
            q: 0.8,
            a: 0.5,
            b: -1.0,
            c: 2.0,
        })
        .unwrap();
        assert_eq!(m, p(0.8, 1.0, 0.0, 2.0, 0.0));
        assert!(special_case_params(&SpecialCase::ArikCoon { q: 1.0 }).is_err());
        assert!(special_case_params(&SpecialCase::HermiteFamily {
            q: 1.5,
            a: 0.0,
            b: 0.0,
            c: 2.0
        })
        .is_err());
    }

    #[test]
    fn nu_modified_catalog_alternates() {
        let s = SpecialCase::NuModified { nu: 0.25 };
        assert_eq!(s.catalog_f(0), Some(1.5));
        assert_eq!(s.catalog_f(1), Some(2.0));
        assert_eq!(s.catalog_f(2), Some(3.5));
        assert_eq!(s.catalog_shift(), 1);
    }
}
