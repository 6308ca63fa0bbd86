//! Representations with general ground data `(κ₀, B, λ₀)`: the eigenvalue
//! sequence `λ_n` of `a†a` and the classification into bounded-below,
//! bounded-above, finite-dimensional and unbounded classes.
//!
//! States are `|n⟩`, `n ∈ ℤ`, with `a†a|n⟩ = λ_n|n⟩`, `N|n⟩ = (κ₀+n)|n⟩` and
//! `K|n⟩ = (−1)^n B/(2ν)|n⟩`. A zero `λ_{n₁} = 0` with `n₁ ≤ 0` cuts the
//! ladder from below (`a|n₁⟩ = 0`); a zero `λ_{n₂} = 0` with `n₂ ≥ 1` cuts it
//! from above (`a†|n₂−1⟩ = 0`). The surviving states are `n₁ ≤ n < n₂`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::fock::{build_window, FockRep, Parity};
use crate::logreal::LogReal;
use crate::math;
use crate::params::DeformationParams;
use crate::structure::FirstOrderSolution;

/// Default half-width of the sanity scan in [`classify`].
pub const DEFAULT_WINDOW: u32 = 256;

/// Relative tolerance for recognising `λ_n = 0`.
const ZERO_TOL: f64 = 1e-12;

/// Ground data of a representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepSpec {
    params: DeformationParams,
    kappa0: f64,
    b: f64,
    lambda0: f64,
}

/// The two parity layouts of two-dimensional representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoDimVariant {
    /// States `−1, 0`; `B = (q^γ+q^α)/(q^γ−q^α)`, `λ₀ = 2q^{ακ₀+β}/(q^α−q^γ)`.
    Lowered,
    /// States `0, 1`; `B = −(q^γ+q^α)/(q^γ−q^α)`, `λ₀ = 0`.
    Ground,
}

impl RepSpec {
    pub fn new(params: DeformationParams, kappa0: f64, b: f64, lambda0: f64) -> Result<Self> {
        if !(kappa0.is_finite() && b.is_finite()) {
            return Err(invalid("kappa0 and B must be finite"));
        }
        if !(lambda0.is_finite() && lambda0 >= 0.0) {
            return Err(invalid(format!(
                "lambda0 must be a finite real >= 0, got {lambda0}"
            )));
        }
        Ok(RepSpec {
            params,
            kappa0,
            b,
            lambda0,
        })
    }

    /// `κ₀ = 0`, `B = 2ν`, `λ₀ = 0`.
    pub fn fock(params: DeformationParams) -> Self {
        RepSpec {
            params,
            kappa0: 0.0,
            b: 2.0 * params.nu(),
            lambda0: 0.0,
        }
    }

    /// `B = −1`, `λ₀ = 0`: the one-dimensional representation.
    pub fn one_dim(params: DeformationParams, kappa0: f64) -> Result<Self> {
        Self::new(params, kappa0, -1.0, 0.0)
    }

    /// Two-dimensional ground data; needs `q^γ < q^α`.
    pub fn two_dim(params: DeformationParams, kappa0: f64, variant: TwoDimVariant) -> Result<Self> {
        let (g, h) = (params.q_gamma(), params.q_alpha());
        if params.is_balanced() || g >= h {
            return Err(invalid(
                "two-dimensional representations need q^gamma < q^alpha",
            ));
        }
        let ratio = (g + h) / (g - h);
        let p = params.pow(params.alpha() * kappa0 + params.beta());
        match variant {
            TwoDimVariant::Lowered => Self::new(params, kappa0, ratio, 2.0 * p / (h - g)),
            TwoDimVariant::Ground => Self::new(params, kappa0, -ratio, 0.0),
        }
    }

    /// Ground data with `λ₁ = 0`, i.e. `λ₀ = −q^{ακ₀+β}(1+B)/q^γ`.
    pub fn bounded_above(params: DeformationParams, kappa0: f64, b: f64) -> Result<Self> {
        let p = params.pow(params.alpha() * kappa0 + params.beta());
        Self::new(params, kappa0, b, -p * (1.0 + b) / params.q_gamma())
    }

    pub fn params(&self) -> &DeformationParams {
        &self.params
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    /// `q^{ακ₀+β}`.
    fn amplitude(&self) -> f64 {
        self.params
            .pow(self.params.alpha() * self.kappa0 + self.params.beta())
    }

    fn solution(&self) -> FirstOrderSolution {
        FirstOrderSolution {
            ln_q: self.params.ln_q(),
            alpha: self.params.alpha(),
            gamma: self.params.gamma(),
            start: self.lambda0,
            amplitude: self.amplitude(),
            parity_amp: self.b,
        }
    }
}

/// `λ_n` for any integer `n`.
pub fn lambda_seq(spec: &RepSpec, n: i64) -> Result<f64> {
    if n == 0 {
        return Ok(spec.lambda0);
    }
    spec.solution()
        .eval_any(n)
        .finite()
        .ok_or(Error::Overflow { what: "lambda", n })
}

/// `λ_n` in log space.
pub fn lambda_seq_log(spec: &RepSpec, n: i64) -> LogReal {
    if n == 0 {
        return LogReal::from_f64(spec.lambda0);
    }
    spec.solution().eval_any(n)
}

/// `λ₀q^{−ακ₀−β} + 1/(q^γ−q^α) + B/(q^γ+q^α)`; `None` when `α = γ`.
pub fn invariant_combination(spec: &RepSpec) -> Option<f64> {
    let p = &spec.params;
    if p.is_balanced() {
        return None;
    }
    let (g, h) = (p.q_gamma(), p.q_alpha());
    Some(spec.lambda0 / spec.amplitude() + 1.0 / (g - h) + spec.b / (g + h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepClass {
    BoundedBelow,
    BoundedAbove,
    FiniteDim(u32),
    Unbounded,
}

impl RepClass {
    pub fn name(self) -> String {
        match self {
            RepClass::BoundedBelow => "bounded-below".into(),
            RepClass::BoundedAbove => "bounded-above".into(),
            RepClass::FiniteDim(d) => format!("finite-dim-{d}"),
            RepClass::Unbounded => "unbounded".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepClassification {
    pub class: RepClass,
    /// Lower cutoff `n₁ ≤ 0` with `λ_{n₁} = 0`.
    pub n1: Option<i64>,
    /// Upper cutoff `n₂ ≥ 1` with `λ_{n₂} = 0`.
    pub n2: Option<i64>,
    pub witness: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Up,
    Down,
}

impl Dir {
    fn step(self) -> i64 {
        match self {
            Dir::Up => 1,
            Dir::Down => -1,
        }
    }
}

/// First index (in a direction) where `λ` is non-positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Hit {
    index: i64,
    zero: bool,
}

/// `λ_n / (P·max(q^{γn}, q^{αn}))` written as `S·u_n − T_{p(n)}·v_n`, or in
/// the balanced case `λ_n/(P q^{γ(n−1)}) = c + n + B·[n odd]`.
enum Shape {
    Split {
        s: f64,
        t: [f64; 2],
        s_scale: f64,
        t_scale: f64,
        ln_r: f64,
    },
    Linear {
        c: f64,
        b: f64,
    },
}

fn snap(x: f64, scale: f64) -> f64 {
    if x.abs() <= ZERO_TOL * scale {
        0.0
    } else {
        x
    }
}

fn snap_index(x: f64) -> (f64, bool) {
    let r = math::round(x);
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        (r, true)
    } else {
        (x, false)
    }
}

fn to_index(x: f64) -> i64 {
    // Saturating; cutoffs this far out are beyond any window anyway.
    x as i64
}

/// First member of `n0, n0 + 2d, …` in the half-line `{n ≥ x}` (`at_least`)
/// or `{n ≤ x}`; `x_exact` marks an integer boundary where `λ` vanishes.
fn first_in_half_line(n0: i64, dir: Dir, x: f64, at_least: bool, x_exact: bool) -> Option<Hit> {
    let x_int = to_index(x);
    let hit = |m: i64| Hit {
        index: m,
        zero: x_exact && m == x_int,
    };
    let n0f = n0 as f64;
    match (at_least, dir) {
        (true, Dir::Up) => {
            if n0f >= x {
                Some(hit(n0))
            } else {
                let k = math::ceil((x - n0f) / 2.0);
                Some(hit(n0.saturating_add(2 * to_index(k))))
            }
        }
        (true, Dir::Down) => (n0f >= x).then(|| hit(n0)),
        (false, Dir::Down) => {
            if n0f <= x {
                Some(hit(n0))
            } else {
                let k = math::ceil((n0f - x) / 2.0);
                Some(hit(n0.saturating_sub(2 * to_index(k))))
            }
        }
        (false, Dir::Up) => (n0f <= x).then(|| hit(n0)),
    }
}

impl Shape {
    fn of(spec: &RepSpec) -> Shape {
        let p = &spec.params;
        let amp = spec.amplitude();
        let b = spec.b;
        if p.is_balanced() {
            return Shape::Linear {
                c: spec.lambda0 * p.q_gamma() / amp,
                b,
            };
        }
        let (g, h) = (p.q_gamma(), p.q_alpha());
        let l0 = spec.lambda0 / amp;
        let inv_d = 1.0 / (g - h);
        let inv_s = 1.0 / (g + h);
        let s_scale = l0 + inv_d.abs() + b.abs() * inv_s;
        let t_scale = inv_d.abs() + b.abs() * inv_s;
        Shape::Split {
            s: snap(l0 + inv_d + b * inv_s, s_scale),
            t: [
                snap(inv_d + b * inv_s, t_scale),
                snap(inv_d - b * inv_s, t_scale),
            ],
            s_scale,
            t_scale,
            ln_r: (p.alpha() - p.gamma()) * p.ln_q(),
        }
    }

    /// Analytic first non-positive index on the progression `n0, n0 + 2d, …`.
    fn first_nonpositive(&self, n0: i64, dir: Dir) -> Option<Hit> {
        let parity = n0.rem_euclid(2) as usize;
        match *self {
            Shape::Linear { c, b } => {
                // c + B·p + n ≤ 0  ⇔  n ≤ −(c + B·p)
                let (x, exact) = snap_index(-(c + b * parity as f64));
                first_in_half_line(n0, dir, x, false, exact)
            }
            Shape::Split { s, t, ln_r, .. } => {
                let t = t[parity];
                let at = |zero| Some(Hit { index: n0, zero });
                if t == 0.0 {
                    return if s <= 0.0 { at(s == 0.0) } else { None };
                }
                if s == 0.0 {
                    return if t > 0.0 { at(false) } else { None };
                }
                // s_n ≤ 0  ⇔  r^n T ≥ S
                if t > 0.0 && s < 0.0 {
                    return at(false);
                }
                if t < 0.0 && s > 0.0 {
                    return None;
                }
                let c = math::ln(s / t);
                // T > 0: n ln r ≥ c;  T < 0: n ln r ≤ c
                let ge = (t > 0.0) == (ln_r > 0.0);
                let (x, exact) = snap_index(c / ln_r);
                first_in_half_line(n0, dir, x, ge, exact)
            }
        }
    }

    /// Analytic normalized value at `n` and its rounding scale.
    fn normalized(&self, n: i64) -> (f64, f64) {
        let nf = n as f64;
        match *self {
            Shape::Linear { c, b } => {
                let odd = if n.rem_euclid(2) == 1 { 1.0 } else { 0.0 };
                (c + nf + b * odd, c.abs() + nf.abs() + b.abs())
            }
            Shape::Split {
                s,
                t,
                s_scale,
                t_scale,
                ln_r,
            } => {
                let lr = nf * ln_r;
                let (u, v) = if lr > 0.0 {
                    (math::exp(-lr), 1.0)
                } else {
                    (1.0, math::exp(lr))
                };
                let tp = t[n.rem_euclid(2) as usize];
                (s * u - tp * v, s_scale * u + t_scale * v)
            }
        }
    }

    /// `ln` of the normalizer dividing `λ_n`.
    fn ln_norm(&self, spec: &RepSpec, n: i64) -> f64 {
        let p = &spec.params;
        let nf = n as f64;
        let base = math::ln(spec.amplitude());
        match self {
            Shape::Linear { .. } => base + p.gamma() * (nf - 1.0) * p.ln_q(),
            Shape::Split { .. } => {
                base + (p.gamma() * nf * p.ln_q()).max(p.alpha() * nf * p.ln_q())
            }
        }
    }
}

fn describe(hit: Option<Hit>) -> String {
    match hit {
        None => "none".into(),
        Some(h) if h.zero => format!("zero at {}", h.index),
        Some(h) => format!("negative at {}", h.index),
    }
}

fn earliest(a: Option<Hit>, b: Option<Hit>, dir: Dir) -> Option<Hit> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(match dir {
            Dir::Up => {
                if x.index <= y.index {
                    x
                } else {
                    y
                }
            }
            Dir::Down => {
                if x.index >= y.index {
                    x
                } else {
                    y
                }
            }
        }),
    }
}

/// Analytic first non-positive index in a direction (excluding `n = 0`).
fn analytic_hit(shape: &Shape, dir: Dir) -> Option<Hit> {
    let starts = match dir {
        Dir::Up => [1, 2],
        Dir::Down => [-1, -2],
    };
    let a = shape.first_nonpositive(starts[0], dir);
    let b = shape.first_nonpositive(starts[1], dir);
    earliest(a, b, dir)
}

/// Scans `λ_n` directly over `1..=window` in one direction and checks it
/// against the analytic hit. Points whose computed value is below the
/// rounding floor while the analytic value is positive are tallied as
/// unresolved rather than counted as zeros.
fn scan_agrees(
    spec: &RepSpec,
    shape: &Shape,
    dir: Dir,
    window: u32,
    analytic: Option<Hit>,
) -> core::result::Result<u32, String> {
    let sol = spec.solution();
    let mut unresolved = 0;
    for k in 1..=i64::from(window) {
        let n = k * dir.step();
        let lam = sol.eval_any(n);
        let scaled = (lam * LogReal::from_parts(1, -shape.ln_norm(spec, n))).to_f64();
        let (exact, scale) = shape.normalized(n);
        let tol = ZERO_TOL * scale;
        let is_hit = analytic.is_some_and(|h| h.index == n);
        if scaled > tol {
            if is_hit {
                return Err(format!("positive at {n} ({scaled:e})"));
            }
            continue;
        }
        if is_hit {
            let h = analytic.unwrap_or(Hit {
                index: n,
                zero: false,
            });
            let zero = scaled.abs() <= tol;
            if h.zero && !zero {
                return Err(format!("negative at {n} ({scaled:e})"));
            }
            return Ok(unresolved);
        }
        if exact > 0.0 && exact <= 4.0 * tol {
            unresolved += 1;
            continue;
        }
        let kind = if scaled.abs() <= tol {
            "zero"
        } else {
            "negative"
        };
        return Err(format!("{kind} at {n} ({scaled:e})"));
    }
    Ok(unresolved)
}

/// Classifies the representation generated by `spec`.
///
/// The cutoffs are solved in closed form: for fixed parity the normalized
/// sequence is monotone in `n`, so the first non-positive index in each
/// direction follows from a logarithm (or a linear equation when `α = γ`).
/// A direct scan of `λ_n` over `[−window, window]` must agree.
pub fn classify(spec: &RepSpec, window: u32) -> Result<RepClassification> {
    if window < 16 {
        return Err(invalid("classification window must be >= 16"));
    }
    let shape = Shape::of(spec);
    let up = analytic_hit(&shape, Dir::Up);
    let down = if spec.lambda0 == 0.0 {
        Some(Hit {
            index: 0,
            zero: true,
        })
    } else {
        analytic_hit(&shape, Dir::Down)
    };

    let within = |h: Option<Hit>| h.filter(|h| h.index.unsigned_abs() <= u64::from(window));
    let scan_up = scan_agrees(spec, &shape, Dir::Up, window, within(up));
    let scan_down = if spec.lambda0 == 0.0 {
        Ok(0)
    } else {
        scan_agrees(spec, &shape, Dir::Down, window, within(down))
    };
    let (unres_up, unres_down) = match (scan_up, scan_down) {
        (Ok(a), Ok(b)) => (a, b),
        (up_res, down_res) => {
            let show = |r: core::result::Result<u32, String>| match r {
                Ok(_) => String::from("agrees"),
                Err(e) => e,
            };
            return Err(Error::Inconsistent {
                analytic: format!("up {}, down {}", describe(up), describe(down)),
                scan: format!("up {}, down {}", show(up_res), show(down_res)),
            });
        }
    };

    for h in [up, down].into_iter().flatten() {
        if !h.zero {
            let value = lambda_seq(spec, h.index).unwrap_or(f64::NEG_INFINITY);
            return Err(Error::NegativeLambdaInterior {
                index: h.index,
                value,
            });
        }
    }

    let n1 = down.map(|h| h.index);
    let n2 = up.map(|h| h.index);
    let class = match (n1, n2) {
        (Some(a), Some(b)) => RepClass::FiniteDim(u32::try_from(b - a).unwrap_or(u32::MAX)),
        (Some(_), None) => RepClass::BoundedBelow,
        (None, Some(_)) => RepClass::BoundedAbove,
        (None, None) => RepClass::Unbounded,
    };

    let mut witness = match shape {
        Shape::Linear { c, b } => {
            format!("q^gamma = q^alpha; lambda_n ~ {c:e} + n + B[n odd], B = {b:e}")
        }
        Shape::Split { s, t, ln_r, .. } => format!(
            "q^gamma {} q^alpha; S = {s:e}; T+ = {:e}; T- = {:e}",
            if ln_r < 0.0 { ">" } else { "<" },
            t[0],
            t[1]
        ),
    };
    witness.push_str(&format!("; up: {}; down: {}", describe(up), describe(down)));
    if unres_up + unres_down > 0 {
        witness.push_str(&format!(
            "; {} scan points below rounding resolution",
            unres_up + unres_down
        ));
    }
    Ok(RepClassification {
        class,
        n1,
        n2,
        witness,
    })
}

/// The exact matrices of a finite-dimensional representation, on the states
/// `n₁ ≤ n < n₂`.
pub fn explicit_rep(spec: &RepSpec) -> Result<FockRep> {
    let cls = classify(spec, DEFAULT_WINDOW)?;
    let (RepClass::FiniteDim(d), Some(n1)) = (cls.class, cls.n1) else {
        return Err(Error::NotFiniteDim);
    };
    if spec.params.nu() == 0.0 {
        return Err(Error::NuZero);
    }
    let d = d as usize;
    let mut lambda = Vec::with_capacity(d + 1);
    lambda.push(0.0);
    for k in 1..d {
        lambda.push(lambda_seq(spec, n1 + k as i64)?);
    }
    lambda.push(0.0);
    build_window(
        &spec.params,
        spec.kappa0,
        spec.b,
        n1,
        &lambda,
        d,
        Parity::Include,
        true,
    )
}

/// Off-diagonal entry of `a` in the two-dimensional representations:
/// `√(2q^{ακ₀+β}/(q^α−q^γ))` or `√(2q^{α(κ₀+1)+β}/(q^α−q^γ))`.
pub fn two_dim_offdiag(params: &DeformationParams, kappa0: f64, variant: TwoDimVariant) -> f64 {
    let shift = match variant {
        TwoDimVariant::Lowered => 0.0,
        TwoDimVariant::Ground => 1.0,
    };
    let num = 2.0 * params.pow(params.alpha() * (kappa0 + shift) + params.beta());
    math::sqrt(num / (params.q_alpha() - params.q_gamma()))
}

/// Re-bases the ladder at state `n`: `B → (−1)^n B`, `κ₀ → κ₀ + n`,
/// `λ₀ → λ_n`.
pub fn renumber(spec: &RepSpec, n: i64) -> Result<RepSpec> {
    let l = lambda_seq(spec, n)?;
    if l < 0.0 {
        return Err(Error::NegativeLambda { index: n, value: l });
    }
    RepSpec::new(
        spec.params,
        spec.kappa0 + n as f64,
        math::parity(n) * spec.b,
        l,
    )
}

/// [`renumber`] restricted to unbounded representations, which it maps to
/// unbounded representations.
pub fn shift_transform(spec: &RepSpec, n: i64) -> Result<RepSpec> {
    if classify(spec, DEFAULT_WINDOW)?.class != RepClass::Unbounded {
        return Err(Error::NotUnbounded);
    }
    renumber(spec, n)
}
