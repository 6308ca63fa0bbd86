//! Spectrum of the free Hamiltonian `H = (ħω₀/2){a, a†}` on the Fock
//! representation: `E_n = (ħω₀/2)(f(n) + f(n+1))`.

use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::logreal::LogReal;
use crate::math;
use crate::params::{reparametrize, validate_positivity, DeformationParams, Reparametrization};
use crate::structure::StructureFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySpec {
    params: DeformationParams,
    hbar_omega0: f64,
    reparam: Reparametrization,
}

impl EnergySpec {
    /// Needs `ħω₀ > 0` and a positive structure function.
    pub fn new(params: DeformationParams, hbar_omega0: f64) -> Result<Self> {
        if !(hbar_omega0.is_finite() && hbar_omega0 > 0.0) {
            return Err(invalid(alloc::format!(
                "scale must be a positive real, got {hbar_omega0}"
            )));
        }
        if !validate_positivity(&params).positive {
            return Err(invalid(
                "structure function is not positive for these parameters",
            ));
        }
        Ok(EnergySpec {
            params,
            hbar_omega0,
            reparam: reparametrize(&params),
        })
    }

    pub fn params(&self) -> &DeformationParams {
        &self.params
    }

    pub fn hbar_omega0(&self) -> f64 {
        self.hbar_omega0
    }

    pub fn reparam(&self) -> &Reparametrization {
        &self.reparam
    }

    fn half(&self) -> f64 {
        0.5 * self.hbar_omega0
    }

    fn sf(&self) -> StructureFunction {
        StructureFunction::fock(self.params)
    }
}

/// `E_n` from the structure function.
pub fn energy(es: &EnergySpec, n: u32) -> LogReal {
    let sf = es.sf();
    (sf.closed_log(n) + sf.closed_log(n + 1)) * LogReal::from_f64(es.half())
}

/// `E_n` in the hyperbolic form
/// `(ħω₀/2)e^{τ(β+ρn)}{S_{n+1} + e^{−τρ}S_n + 2ν(X_{n+1} + e^{−τρ}X_n)/cosh τμ}`
/// with `S_m = sinh(τμm)/sinh τμ` and `X_m = sinh(τμm)` (m even) or
/// `cosh(τμm)` (m odd). `None` when `μ = 0` or a term leaves the float range.
pub fn energy_hyperbolic(es: &EnergySpec, n: u32) -> Option<f64> {
    let Reparametrization { tau, rho, mu, beta } = es.reparam;
    if mu == 0.0 {
        return None;
    }
    let nu = es.params.nu();
    let tm = tau * mu;
    let s = |m: f64| math::sinh(tm * m) / math::sinh(tm);
    let x = |m: u32| {
        if m.is_multiple_of(2) {
            math::sinh(tm * f64::from(m))
        } else {
            math::cosh(tm * f64::from(m))
        }
    };
    let nf = f64::from(n);
    let back = math::exp(-tau * rho);
    let body = s(nf + 1.0) + back * s(nf) + 2.0 * nu * (x(n + 1) + back * x(n)) / math::cosh(tm);
    let v = es.half() * math::exp(tau * (beta + rho * nf)) * body;
    v.is_finite().then_some(v)
}

/// `E_n` in the odd/even exponential form, evaluated in log space:
/// `(ħω₀/2)e^{τ(β−ρ)}[A q^{γn} − C_n q^{αn}]`.
pub fn energy_exponential(es: &EnergySpec, n: u32) -> Result<LogReal> {
    let Reparametrization { tau, rho, mu, beta } = es.reparam;
    if mu == 0.0 {
        return Err(Error::MuZero);
    }
    let nu = es.params.nu();
    let tm = tau * mu;
    let (g, h) = (es.params.q_gamma(), es.params.q_alpha());
    let (sh, ch) = (math::sinh(tm), math::cosh(tm));
    let sign = math::parity(i64::from(n));
    let a = 0.5 * (1.0 + g) * (1.0 / sh + 2.0 * nu / ch);
    let c = 0.5 * (1.0 + h) / sh + sign * nu * (1.0 - h) / ch;
    let nf = f64::from(n);
    let tg = LogReal::from_f64(a) * LogReal::from_parts(1, tau * es.params.gamma() * nf);
    let th = LogReal::from_f64(c) * LogReal::from_parts(1, tau * es.params.alpha() * nf);
    let pre = LogReal::from_parts(1, math::ln(es.half()) + tau * (beta - rho));
    Ok(pre * (tg - th))
}

/// `E_n` for `μ = 0`:
/// `(ħω₀/2)e^{τ(β+ρn)}[(n+ν)(1+e^{−τρ}) + (−1)^n ν(1−e^{−τρ}) + 1]`.
pub fn energy_balanced(es: &EnergySpec, n: u32) -> Result<LogReal> {
    let Reparametrization { tau, rho, mu, beta } = es.reparam;
    if mu != 0.0 {
        return Err(invalid("balanced form needs mu = 0"));
    }
    let nu = es.params.nu();
    let nf = f64::from(n);
    let back = math::exp(-tau * rho);
    let body = (nf + nu) * (1.0 + back) + math::parity(i64::from(n)) * nu * (1.0 - back) + 1.0;
    Ok(LogReal::from_f64(body)
        * LogReal::from_parts(1, math::ln(es.half()) + tau * (beta + rho * nf)))
}

/// The reparametrized closed form appropriate to `μ`.
pub fn energy_closed(es: &EnergySpec, n: u32) -> LogReal {
    if es.reparam.mu == 0.0 {
        energy_balanced(es, n).unwrap_or(LogReal::ZERO)
    } else {
        match energy_hyperbolic(es, n) {
            Some(v) => LogReal::from_f64(v),
            None => energy_exponential(es, n).unwrap_or(LogReal::ZERO),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: u32,
    /// `(ħω₀/2)(f(n) + f(n+1))`.
    pub value: LogReal,
    /// The reparametrized closed form.
    pub closed: LogReal,
    pub relative_deviation: f64,
}

pub fn energy_levels(es: &EnergySpec, n_max: u32) -> Vec<EnergyLevel> {
    (0..=n_max)
        .map(|n| {
            let value = energy(es, n);
            let closed = energy_closed(es, n);
            EnergyLevel {
                n,
                value,
                closed,
                relative_deviation: value.relative_difference(closed),
            }
        })
        .collect()
}

/// How [`spacing`] obtained its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingRoute {
    ClosedForm,
    /// `μ = 0`: the closed form is 0/0, so `E_{2n+1} − E_{2n}` is used.
    DirectDifference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spacing {
    pub value: f64,
    pub route: SpacingRoute,
}

/// `E_{2n+1} − E_{2n}` from the structure function.
pub fn spacing_direct(es: &EnergySpec, n: u32) -> Result<f64> {
    let sf = es.sf();
    let v = es.half() * (sf.closed(2 * n + 2)? - sf.closed(2 * n)?);
    Ok(v)
}

/// `E_{2n+1} − E_{2n} = (ħω₀/2)e^{τ(β−ρ)}[e^{τγ(2n+1)} sinh τγ − e^{τα(2n+1)} sinh τα]
/// · [1/sinh τμ + 2ν/cosh τμ]`.
pub fn spacing(es: &EnergySpec, n: u32) -> Result<Spacing> {
    let Reparametrization { tau, rho, mu, beta } = es.reparam;
    if mu == 0.0 {
        return Ok(Spacing {
            value: spacing_direct(es, n)?,
            route: SpacingRoute::DirectDifference,
        });
    }
    let (a, g) = (es.params.alpha(), es.params.gamma());
    let m = 2.0 * f64::from(n) + 1.0;
    let tm = tau * mu;
    let growth =
        math::exp(tau * g * m) * math::sinh(tau * g) - math::exp(tau * a * m) * math::sinh(tau * a);
    let value = es.half()
        * math::exp(tau * (beta - rho))
        * growth
        * (1.0 / math::sinh(tm) + 2.0 * es.params.nu() / math::cosh(tm));
    if !value.is_finite() {
        return Err(Error::Overflow {
            what: "spacing",
            n: i64::from(n),
        });
    }
    Ok(Spacing {
        value,
        route: SpacingRoute::ClosedForm,
    })
}

/// `(ħω₀/2)(sinh 2μτ / sinh μτ) e^{τ(β+ρ)} e^{2γτn}`, as commonly printed.
/// It agrees with [`spacing`] only at `n = 0`, `ν = 0`.
pub fn spacing_as_printed(es: &EnergySpec, n: u32) -> Result<f64> {
    let Reparametrization { tau, rho, mu, beta } = es.reparam;
    if mu == 0.0 {
        return Err(Error::MuZero);
    }
    let tm = tau * mu;
    Ok(es.half() * math::sinh(2.0 * tm) / math::sinh(tm)
        * math::exp(tau * (beta + rho))
        * math::exp(2.0 * es.params.gamma() * tau * f64::from(n)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticCase {
    GrowsUnbounded,
    SaturatesToEmax(f64),
    IncreasesThenVanishes,
}

impl AsymptoticCase {
    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticCase::GrowsUnbounded => "grows-unbounded",
            AsymptoticCase::SaturatesToEmax(_) => "saturates",
            AsymptoticCase::IncreasesThenVanishes => "increases-then-vanishes",
        }
    }
}

/// Summary of `E_0, …, E_N` used to corroborate a verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyProbe {
    pub n_max: u32,
    pub first: LogReal,
    pub last: LogReal,
    pub peak_index: u32,
    pub peak: LogReal,
    /// `E_n < E_{n+1}` for all `N/2 ≤ n < N`.
    pub increasing_tail: bool,
    /// `|E_N − E_max| / E_max` in the saturating case.
    pub saturation_gap: Option<f64>,
    /// No `E_n`, `n ≤ N`, exceeds `E_max` beyond rounding (4 ulp), in the
    /// saturating case.
    pub below_emax: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticVerdict {
    pub case: AsymptoticCase,
    /// Leading exponent `τρ + |τμ| = max(τα, τγ)` of `E_n`.
    pub driver: f64,
    pub probe: EnergyProbe,
    pub corroborated: bool,
}

/// Terms in the numeric probe.
pub const PROBE_LEVELS: u32 = 10_000;

/// `max(τα, τγ)`, which equals `τρ + |τμ|`; exact zero when the dominant
/// exponent vanishes.
pub fn driver(es: &EnergySpec) -> f64 {
    let tau = es.reparam.tau;
    // `+ 0.0` turns a −0 product into 0.
    (tau * es.params.alpha()).max(tau * es.params.gamma()) + 0.0
}

/// The limit of `E_n` when the driver vanishes:
/// `(ħω₀/2)e^{τ(β−ρ)}[1/sinh|τμ| + 2ν/cosh(τμ)·[q^γ = 1]]`.
pub fn e_max(es: &EnergySpec) -> Result<f64> {
    let Reparametrization { tau, rho, mu, beta } = es.reparam;
    if driver(es) != 0.0 {
        return Err(Error::NotSaturating);
    }
    if mu == 0.0 {
        return Err(Error::MuZero);
    }
    let tm = tau * mu;
    let parity_term = if tau * es.params.gamma() == 0.0 {
        2.0 * es.params.nu() / math::cosh(tm)
    } else {
        0.0
    };
    Ok(es.half() * math::exp(tau * (beta - rho)) * (1.0 / math::sinh(tm.abs()) + parity_term))
}

/// Classifies the large-`n` behaviour of `E_n` from the sign of the driver
/// and corroborates it with `E_0, …, E_{10⁴}`.
pub fn asymptotic_class(es: &EnergySpec) -> Result<AsymptoticVerdict> {
    asymptotic_class_with(es, PROBE_LEVELS)
}

pub fn asymptotic_class_with(es: &EnergySpec, n_max: u32) -> Result<AsymptoticVerdict> {
    if n_max < 2 {
        return Err(invalid("probe needs at least 2 levels"));
    }
    let d = driver(es);
    let case = if d > 0.0 || (d == 0.0 && es.reparam.mu == 0.0) {
        AsymptoticCase::GrowsUnbounded
    } else if d == 0.0 {
        AsymptoticCase::SaturatesToEmax(e_max(es)?)
    } else {
        AsymptoticCase::IncreasesThenVanishes
    };
    let levels: Vec<LogReal> = (0..=n_max).map(|n| energy(es, n)).collect();
    let (mut peak_index, mut peak) = (0u32, levels[0]);
    for (i, v) in levels.iter().enumerate() {
        if *v > peak {
            peak = *v;
            peak_index = i as u32;
        }
    }
    let first = levels[0];
    let last = levels[n_max as usize];
    let increasing_tail = levels[n_max as usize / 2..].windows(2).all(|w| w[0] < w[1]);
    let (saturation_gap, below_emax) = match case {
        AsymptoticCase::SaturatesToEmax(em) => {
            let emax = LogReal::from_f64(em);
            (
                Some(last.relative_difference(emax)),
                Some(
                    levels
                        .iter()
                        .all(|v| *v <= emax * LogReal::from_f64(1.0 + 4.0 * f64::EPSILON)),
                ),
            )
        }
        _ => (None, None),
    };
    let corroborated = match case {
        AsymptoticCase::GrowsUnbounded => increasing_tail,
        AsymptoticCase::SaturatesToEmax(_) => saturation_gap.is_some_and(|g| g <= 1e-6),
        AsymptoticCase::IncreasesThenVanishes => {
            peak_index < n_max && last < peak * LogReal::from_f64(1e-3)
        }
    };
    Ok(AsymptoticVerdict {
        case,
        driver: d,
        probe: EnergyProbe {
            n_max,
            first,
            last,
            peak_index,
            peak,
            increasing_tail,
            saturation_gap,
            below_emax,
        },
        corroborated,
    })
}
