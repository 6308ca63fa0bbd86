//! The position operator `Q = a + a†` for the family
//! `α = 2a, β = 2a + b, γ = 2a + c − 1, ν = 0`, its polynomial eigenfunctions
//! (generalized discrete q-Hermite I polynomials) and its spectrum.

mod pochhammer;
mod poly;
mod spectrum;
mod sturm;

pub use pochhammer::{qpochhammer, PochLength, Pochhammer};
pub use poly::{h_poly, p_poly, HMode};
pub use spectrum::{default_k_max, orthogonality_gram, q_spectrum, QSpectrum};
pub use sturm::{jacobi_eig_intervals, jacobi_eigs, EigenInterval, JacobiOperator};

use alloc::format;

use crate::error::{invalid, Error, Result};
use crate::logreal::LogReal;
use crate::math;
use crate::params::{special_case_params, DeformationParams, SpecialCase};

/// `(q, a, b, c)` with `q ∈ (0, 1)` and `q′ = q^{c−1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteFamilyParams {
    q: f64,
    a: f64,
    b: f64,
    c: f64,
}

impl HermiteFamilyParams {
    pub fn new(q: f64, a: f64, b: f64, c: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(invalid(format!("q must lie in (0, 1), got {q}")));
        }
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(invalid("a, b, c must be finite"));
        }
        Ok(HermiteFamilyParams { q, a, b, c })
    }

    /// The restricted family `a = (c−1)/2`.
    pub fn restricted(q: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(q, 0.5 * (c - 1.0), b, c)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `q′ = q^{c−1}`.
    pub fn qprime(&self) -> f64 {
        math::qpow(math::ln(self.q), self.c - 1.0)
    }

    pub(crate) fn ln_q(&self) -> f64 {
        math::ln(self.q)
    }

    pub fn to_deformation(&self) -> DeformationParams {
        special_case_params(&SpecialCase::HermiteFamily {
            q: self.q,
            a: self.a,
            b: self.b,
            c: self.c,
        })
        .expect("validated hermite parameters map to valid deformation parameters")
    }

    pub fn is_restricted(&self) -> bool {
        let target = 0.5 * (self.c - 1.0);
        (self.a - target).abs() <= 1e-12 * self.a.abs().max(1.0)
    }

    pub(crate) fn require_restricted(&self) -> Result<()> {
        if self.is_restricted() {
            Ok(())
        } else {
            Err(Error::RestrictionViolated(format!(
                "needs a = (c-1)/2 = {}, got a = {}",
                0.5 * (self.c - 1.0),
                self.a
            )))
        }
    }

    pub(crate) fn require_unit_qprime(&self) -> Result<()> {
        let qp = self.qprime();
        if qp > 0.0 && qp < 1.0 {
            Ok(())
        } else {
            Err(Error::RestrictionViolated(format!(
                "needs q' = q^(c-1) in (0, 1), got {qp}"
            )))
        }
    }
}

/// Whether `Σ 1/r_n` diverges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVerdict {
    /// The series diverges: `Q` is essentially self-adjoint.
    Divergent,
    /// The series converges: `Q` is not essentially self-adjoint.
    Convergent,
}

/// Partial sums `Σ_{n<N} 1/r_n`, in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSumProbe {
    pub terms: u32,
    pub ln_sum_half: f64,
    pub ln_sum_full: f64,
}

impl PartialSumProbe {
    /// True when doubling the number of terms still changes the sum.
    pub fn grows(&self) -> bool {
        self.ln_sum_full - self.ln_sum_half > 1e-9
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfAdjointness {
    pub verdict: SeriesVerdict,
    /// `e` in `r_n ~ q^{e n}`: `a` for `c > 1`, `a + (c−1)/2` for `c < 1`.
    pub exponent: f64,
    pub probe: PartialSumProbe,
}

/// Number of terms in the partial-sum probe.
pub const PROBE_TERMS: u32 = 10_000;

/// Decides divergence of `Σ 1/r_n`, `r_n = f(n+1)^{1/2}`, for `q ∈ (0, 1)`.
///
/// `r_n` behaves like `q^{e n}` up to a constant, so the series diverges iff
/// `e > 0`. `b` only rescales `r_n` and is set to zero in the probe.
pub fn selfadjointness_case(q: f64, a: f64, c: f64) -> Result<SelfAdjointness> {
    let fp = HermiteFamilyParams::new(q, a, 0.0, c)?;
    if c == 1.0 {
        return Err(Error::BoundaryCase("c = 1 lies between the table rows"));
    }
    let exponent = if c > 1.0 { a } else { a + 0.5 * (c - 1.0) };
    if exponent == 0.0 {
        return Err(Error::BoundaryCase("deciding exponent is zero"));
    }
    let verdict = if exponent > 0.0 {
        SeriesVerdict::Divergent
    } else {
        SeriesVerdict::Convergent
    };
    Ok(SelfAdjointness {
        verdict,
        exponent,
        probe: partial_sums(&fp, PROBE_TERMS),
    })
}

/// `ln f(n)` for the family with `b`, valid for `q′` on either side of 1.
pub(crate) fn ln_f(fp: &HermiteFamilyParams, n: u32) -> f64 {
    let nf = f64::from(n);
    let ln_qp = (fp.c - 1.0) * fp.ln_q();
    let ln_ratio = if ln_qp < 0.0 {
        math::ln_1p(-math::exp(nf * ln_qp)) - math::ln_1p(-math::exp(ln_qp))
    } else {
        nf * ln_qp + math::ln_1p(-math::exp(-nf * ln_qp)) - math::ln(math::exp(ln_qp) - 1.0)
    };
    (2.0 * fp.a * nf + fp.b) * fp.ln_q() + ln_ratio
}

fn partial_sums(fp: &HermiteFamilyParams, terms: u32) -> PartialSumProbe {
    let mut acc = LogReal::ZERO;
    let mut half = 0.0;
    for n in 0..terms {
        acc = acc + LogReal::from_parts(1, -0.5 * ln_f(fp, n + 1));
        if n + 1 == terms / 2 {
            half = acc.ln_abs();
        }
    }
    PartialSumProbe {
        terms,
        ln_sum_half: half,
        ln_sum_full: acc.ln_abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::StructureFunction;

    #[test]
    fn family_maps_to_deformation() {
        let fp = HermiteFamilyParams::new(0.8, 0.5, -1.0, 2.0).unwrap();
        let d = fp.to_deformation();
        assert_eq!(
            (d.alpha(), d.beta(), d.gamma(), d.nu()),
            (1.0, 0.0, 2.0, 0.0)
        );
        assert!(fp.is_restricted());
        assert!((fp.qprime() - 0.8).abs() < 1e-15);
        assert!(HermiteFamilyParams::new(1.2, 0.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn ln_f_matches_structure_function() {
        for fp in [
            HermiteFamilyParams::new(0.6, 0.3, 0.4, 1.7).unwrap(),
            HermiteFamilyParams::new(0.6, -0.2, 0.4, 0.5).unwrap(),
        ] {
            let sf = StructureFunction::fock(fp.to_deformation());
            for n in 1..40 {
                let want = math::ln(sf.closed(n).unwrap());
                assert!(
                    (ln_f(&fp, n) - want).abs() < 1e-12 * want.abs().max(1.0),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn selfadjointness_follows_the_decay_exponent() {
        // r_n ~ q^{a n}: a > 0 means r_n → 0, so Σ 1/r_n diverges.
        let div = selfadjointness_case(0.5, 0.3, 1.5).unwrap();
        assert_eq!(div.verdict, SeriesVerdict::Divergent);
        assert!(div.probe.grows());
        let conv = selfadjointness_case(0.5, -0.3, 1.5).unwrap();
        assert_eq!(conv.verdict, SeriesVerdict::Convergent);
        assert!(!conv.probe.grows());
        assert!(div.probe.ln_sum_full > conv.probe.ln_sum_full + math::ln(10.0));

        assert_eq!(
            selfadjointness_case(0.5, 0.1, 0.6).unwrap().verdict,
            SeriesVerdict::Convergent
        );
        assert_eq!(
            selfadjointness_case(0.5, 0.3, 0.6).unwrap().verdict,
            SeriesVerdict::Divergent
        );
    }

    #[test]
    fn boundary_cases_are_not_guessed() {
        assert!(matches!(
            selfadjointness_case(0.5, 0.0, 1.5),
            Err(Error::BoundaryCase(_))
        ));
        assert!(matches!(
            selfadjointness_case(0.5, 0.2, 0.6),
            Err(Error::BoundaryCase(_))
        ));
        assert!(matches!(
            selfadjointness_case(0.5, 0.2, 1.0),
            Err(Error::BoundaryCase(_))
        ));
        assert!(selfadjointness_case(1.5, 0.2, 1.5).is_err());
    }
}
