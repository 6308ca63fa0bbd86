//! Truncated matrix representations of `{a, a†, N, K}` and numeric checks
//! of the defining relations, the commutation identity for `a(a†)^n`, and the
//! Casimir operators.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::math;
use crate::params::DeformationParams;
use crate::structure::{bracket_parts, StructureFunction};

/// Whether to carry a matrix for the parity operator `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Include,
    Omit,
}

/// A `D`-dimensional representation on states `|m⟩`,
/// `m = first_index, …, first_index + D − 1`.
///
/// `a|m⟩ = √λ_m |m−1⟩`, `N|m⟩ = (κ₀ + m)|m⟩`, `K|m⟩ = (−1)^m B/(2ν) |m⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockRep {
    params: DeformationParams,
    dim: usize,
    first_index: i64,
    lambda: Vec<f64>,
    kappa0: f64,
    b: f64,
    exact: bool,
    a: DMatrix<f64>,
    n: DMatrix<f64>,
    k: Option<DMatrix<f64>>,
}

impl FockRep {
    pub fn params(&self) -> &DeformationParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    /// `λ_first, …, λ_{first+D}`.
    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// True for exact finite-dimensional representations (no truncation).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn adag(&self) -> DMatrix<f64> {
        self.a.transpose()
    }

    pub fn n_matrix(&self) -> &DMatrix<f64> {
        &self.n
    }

    pub fn k_matrix(&self) -> Option<&DMatrix<f64>> {
        self.k.as_ref()
    }

    /// Eigenvalue of `N` on the `i`-th basis vector.
    fn n_eigen(&self, i: usize) -> f64 {
        self.kappa0 + (self.first_index + i as i64) as f64
    }

    /// Diagonal of `2νK`, or zeros when `K` is omitted.
    fn two_nu_k(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| match self.k {
                Some(_) => math::parity(self.first_index + i as i64) * self.b,
                None => 0.0,
            })
            .collect()
    }

    /// `q^{αN+β}` as a diagonal.
    fn source_diag(&self, p: &DeformationParams) -> Vec<f64> {
        (0..self.dim)
            .map(|i| p.pow(p.alpha() * self.n_eigen(i) + p.beta()))
            .collect()
    }

    /// Index range `[lo, hi)` of the block unaffected by truncation.
    fn inner_range(&self) -> (usize, usize) {
        if self.exact {
            return (0, self.dim);
        }
        let lo = usize::from(self.lambda[0] > 0.0);
        (
            lo.min(self.dim),
            self.dim.saturating_sub(1).max(lo.min(self.dim)),
        )
    }
}

/// Builds the representation on states `0..dim` from `λ_0..λ_dim`.
pub fn build_fock(
    p: &DeformationParams,
    kappa0: f64,
    b: f64,
    lambda: &[f64],
    dim: usize,
    parity: Parity,
) -> Result<FockRep> {
    build_window(p, kappa0, b, 0, lambda, dim, parity, false)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn build_window(
    p: &DeformationParams,
    kappa0: f64,
    b: f64,
    first_index: i64,
    lambda: &[f64],
    dim: usize,
    parity: Parity,
    exact: bool,
) -> Result<FockRep> {
    if dim == 0 {
        return Err(invalid("dimension must be positive"));
    }
    if lambda.len() < dim + 1 {
        return Err(Error::DimensionMismatch {
            expected: dim + 1,
            found: lambda.len(),
        });
    }
    if !kappa0.is_finite() || !b.is_finite() {
        return Err(invalid("kappa0 and B must be finite"));
    }
    let lambda = lambda[..=dim].to_vec();
    for (i, &l) in lambda.iter().enumerate() {
        if l.is_nan() || l < 0.0 {
            return Err(Error::NegativeLambda {
                index: first_index + i as i64,
                value: l,
            });
        }
    }
    let mut a = DMatrix::zeros(dim, dim);
    for i in 1..dim {
        a[(i - 1, i)] = math::sqrt(lambda[i]);
    }
    let n = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            kappa0 + (first_index + i as i64) as f64
        } else {
            0.0
        }
    });
    let k = match parity {
        Parity::Omit => None,
        Parity::Include => {
            if p.nu() == 0.0 {
                return Err(Error::NuZero);
            }
            let scale = b / (2.0 * p.nu());
            Some(DMatrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    math::parity(first_index + i as i64) * scale
                } else {
                    0.0
                }
            }))
        }
    };
    Ok(FockRep {
        params: *p,
        dim,
        first_index,
        lambda,
        kappa0,
        b,
        exact,
        a,
        n,
        k,
    })
}

/// `f(0), …, f(dim)` with `f(0) = 0`.
pub fn fock_lambda(p: &DeformationParams, dim: usize) -> Result<Vec<f64>> {
    let sf = StructureFunction::fock(*p);
    (0..=dim as u32).map(|n| sf.closed(n)).collect()
}

/// The Fock representation: `κ₀ = 0`, `B = 2ν`, `λ = f`, with `K` whenever
/// `ν ≠ 0`.
pub fn fock_rep(p: &DeformationParams, dim: usize) -> Result<FockRep> {
    let lambda = fock_lambda(p, dim)?;
    let parity = if p.nu() == 0.0 {
        Parity::Omit
    } else {
        Parity::Include
    };
    build_fock(p, 0.0, 2.0 * p.nu(), &lambda, dim, parity)
}

/// The relations checked by [`verify_relations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `aa† − q^γ a†a − (1 + 2νK) q^{αN+β}`
    Deformed,
    /// `[N, a] + a`
    NumberLower,
    /// `[N, a†] − a†`
    NumberRaise,
    /// `Ka + aK`
    ParityLower,
    /// `Ka† + a†K`
    ParityRaise,
    /// `K² − 1`
    Involution,
    /// `a(a†)^n − q^{γn}(a†)^n a − (a†)^{n−1}[n; α, γ; νK] q^{αN+β}`
    PowerIdentity(u32),
    /// `[C̃₃, a]`
    CasimirLower,
    /// `[C̃₃, a†]`
    CasimirRaise,
}

impl Relation {
    pub fn name(self) -> alloc::string::String {
        match self {
            Relation::Deformed => "deformed-commutator".into(),
            Relation::NumberLower => "number-lower".into(),
            Relation::NumberRaise => "number-raise".into(),
            Relation::ParityLower => "parity-lower".into(),
            Relation::ParityRaise => "parity-raise".into(),
            Relation::Involution => "parity-involution".into(),
            Relation::PowerIdentity(n) => format!("power-identity-{n}"),
            Relation::CasimirLower => "casimir-lower".into(),
            Relation::CasimirRaise => "casimir-raise".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub relation: Relation,
    /// Largest entry over the block unaffected by truncation.
    pub max_abs_residual_inner: f64,
    pub max_abs_residual_full: f64,
}

/// A relation that was not evaluated, with the reason.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Skipped {
    pub relation: Relation,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub checked: Vec<ResidualReport>,
    pub skipped: Vec<Skipped>,
}

impl RelationReport {
    pub fn max_inner(&self) -> f64 {
        self.checked
            .iter()
            .map(|r| r.max_abs_residual_inner)
            .fold(0.0, f64::max)
    }
}

fn diag(v: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(v))
}

fn report(rep: &FockRep, relation: Relation, m: &DMatrix<f64>) -> ResidualReport {
    let (lo, hi) = rep.inner_range();
    let mut inner = 0.0f64;
    let mut full = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let v = m[(i, j)].abs();
            full = full.max(v);
            if (lo..hi).contains(&i) && (lo..hi).contains(&j) {
                inner = inner.max(v);
            }
        }
    }
    ResidualReport {
        relation,
        max_abs_residual_inner: inner,
        max_abs_residual_full: full,
    }
}

/// Residuals of the defining relations evaluated with the parameters `p`.
///
/// `K`-dependent relations are skipped when the representation carries no
/// `K` matrix; the deformed commutator is then checked only for `ν = 0`.
/// `K² = 1` is checked only when `|B| = 2|ν|`, the case where `K` is an
/// involution.
pub fn verify_relations(rep: &FockRep, p: &DeformationParams) -> RelationReport {
    let a = &rep.a;
    let ad = rep.adag();
    let n = &rep.n;
    let mut checked = Vec::new();
    let mut skipped = Vec::new();

    if rep.k.is_some() || p.nu() == 0.0 {
        let tk = rep.two_nu_k();
        let src = rep.source_diag(p);
        let rhs: Vec<f64> = tk.iter().zip(&src).map(|(k, s)| (1.0 + k) * s).collect();
        let m = a * &ad - &ad * a * p.q_gamma() - diag(&rhs);
        checked.push(report(rep, Relation::Deformed, &m));
    } else {
        skipped.push(Skipped {
            relation: Relation::Deformed,
            reason: "parity operator omitted with nu != 0",
        });
    }

    checked.push(report(rep, Relation::NumberLower, &(n * a - a * n + a)));
    checked.push(report(
        rep,
        Relation::NumberRaise,
        &(n * &ad - &ad * n - &ad),
    ));

    match &rep.k {
        Some(k) => {
            checked.push(report(rep, Relation::ParityLower, &(k * a + a * k)));
            checked.push(report(rep, Relation::ParityRaise, &(k * &ad + &ad * k)));
            let involutive = (rep.b.abs() - 2.0 * p.nu().abs()).abs()
                <= 1e-12 * (2.0 * p.nu().abs()).max(f64::MIN_POSITIVE);
            if involutive {
                let id = DMatrix::<f64>::identity(rep.dim, rep.dim);
                checked.push(report(rep, Relation::Involution, &(k * k - id)));
            } else {
                skipped.push(Skipped {
                    relation: Relation::Involution,
                    reason: "K^2 = (B/2nu)^2 is not 1 for |B| != 2|nu|",
                });
            }
        }
        None => {
            for relation in [
                Relation::ParityLower,
                Relation::ParityRaise,
                Relation::Involution,
            ] {
                skipped.push(Skipped {
                    relation,
                    reason: "no parity operator",
                });
            }
        }
    }
    RelationReport { checked, skipped }
}

/// Where `K` sits relative to `(a†)^{n−1}` in the power identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPlacement {
    /// `(a†)^{n−1} [n; νK] q^{αN+β}`: the placement for which the identity holds.
    Right,
    /// `[n; νK] (a†)^{n−1} q^{αN+β}`.
    Left,
}

/// Residual of `a(a†)^n − q^{γn}(a†)^n a − (a†)^{n−1}[n; α, γ; νK] q^{αN+β}`.
pub fn verify_useful_formula(
    rep: &FockRep,
    p: &DeformationParams,
    n: u32,
) -> Result<ResidualReport> {
    verify_useful_formula_with(rep, p, n, KPlacement::Right)
}

pub fn verify_useful_formula_with(
    rep: &FockRep,
    p: &DeformationParams,
    n: u32,
    placement: KPlacement,
) -> Result<ResidualReport> {
    if n == 0 || n as usize > rep.dim / 2 {
        return Err(invalid(format!(
            "power identity needs 1 <= n <= D/2 = {}, got {n}",
            rep.dim / 2
        )));
    }
    if rep.k.is_none() && p.nu() != 0.0 {
        return Err(Error::NuZero);
    }
    let a = &rep.a;
    let ad = rep.adag();
    let dim = rep.dim;
    let id = DMatrix::<f64>::identity(dim, dim);
    let mut ad_pow = id.clone();
    for _ in 0..n - 1 {
        ad_pow = &ad_pow * &ad;
    }
    let ad_n = &ad_pow * &ad;
    let (c1, c2) = bracket_parts(p, n);
    let tk = rep.two_nu_k();
    let src = rep.source_diag(p);
    let brk: Vec<f64> = tk.iter().map(|k| c1 + c2 * k).collect();
    let gn = p.pow(p.gamma() * f64::from(n));
    let rhs = match placement {
        KPlacement::Right => &ad_pow * diag(&brk) * diag(&src),
        KPlacement::Left => diag(&brk) * &ad_pow * diag(&src),
    };
    let m = a * &ad_n - &ad_n * a * gn - rhs;
    Ok(report(rep, Relation::PowerIdentity(n), &m))
}

/// `C̃₃` and its commutation residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirReport {
    pub diagonal: Vec<f64>,
    pub lower: ResidualReport,
    pub raise: ResidualReport,
    /// `max − min` of the diagonal over the inner block.
    pub spread: f64,
}

/// `C̃₃ = q^{−γN}(D(N) − νE(N)K − a†a)` with `E(N) = 2q^{αN+β}/(q^γ+q^α)`
/// and `D(N+1) − q^γ D(N) = q^{αN+β}`.
pub fn casimir_c3(rep: &FockRep, p: &DeformationParams) -> Result<CasimirReport> {
    if rep.k.is_none() && p.nu() != 0.0 {
        return Err(Error::NuZero);
    }
    let ln_q = p.ln_q();
    let (g, h) = (p.q_gamma(), p.q_alpha());
    let qb = p.pow(p.beta());
    let tk = rep.two_nu_k();
    let diagonal: Vec<f64> = (0..rep.dim)
        .map(|i| {
            let nn = rep.n_eigen(i);
            let inv_g = math::qpow(ln_q, -p.gamma() * nn);
            let ratio = math::qpow(ln_q, (p.alpha() - p.gamma()) * nn);
            // q^{−γN} D(N), with νK = tk/2
            let d_scaled = if p.is_balanced() {
                qb * (nn + p.nu()) / g
            } else {
                qb * ((1.0 - ratio) / (g - h) + 2.0 * p.nu() / (g + h))
            };
            let e_scaled = qb * ratio / (g + h) * tk[i];
            d_scaled - e_scaled - inv_g * rep.lambda[i]
        })
        .collect();
    let c = diag(&diagonal);
    let a = &rep.a;
    let ad = rep.adag();
    let lower = report(rep, Relation::CasimirLower, &(&c * a - a * &c));
    let raise = report(rep, Relation::CasimirRaise, &(&c * &ad - &ad * &c));
    let (lo, hi) = rep.inner_range();
    let inner = &diagonal[lo..hi.max(lo)];
    let spread = if inner.is_empty() {
        0.0
    } else {
        inner.iter().cloned().fold(f64::MIN, f64::max)
            - inner.iter().cloned().fold(f64::MAX, f64::min)
    };
    Ok(CasimirReport {
        diagonal,
        lower,
        raise,
        spread,
    })
}

/// Diagonal of `C₂ = e^{iπN} K` as `(re, im)` pairs; `None` without `K`.
pub fn casimir_c2(rep: &FockRep) -> Option<Vec<(f64, f64)>> {
    let k = rep.k.as_ref()?;
    Some(
        (0..rep.dim)
            .map(|i| {
                let phase = core::f64::consts::PI * rep.n_eigen(i);
                let kv = k[(i, i)];
                (math::cos(phase) * kv, math::sin(phase) * kv)
            })
            .collect(),
    )
}
