//! Eigenvalues of zero-diagonal symmetric tridiagonal matrices by Sturm
//! sequence bisection.

use alloc::vec::Vec;

use super::HermiteFamilyParams;
use crate::error::{invalid, Result};
use crate::math;
use crate::structure::StructureFunction;

/// Symmetric tridiagonal matrix with zero diagonal and off-diagonal `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOperator {
    r: Vec<f64>,
}

impl JacobiOperator {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        if let Some(v) = r.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(invalid(alloc::format!(
                "off-diagonal entries must be positive, got {v}"
            )));
        }
        Ok(JacobiOperator { r })
    }

    /// The `dim × dim` section of `Q = a + a†` with `r_n = f(n+1)^{1/2}`.
    pub fn from_family(fp: &HermiteFamilyParams, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension must be positive"));
        }
        let sf = StructureFunction::fock(fp.to_deformation());
        let r = (1..dim as u32)
            .map(|n| sf.closed(n).map(math::sqrt))
            .collect::<Result<Vec<_>>>()?;
        Self::new(r)
    }

    pub fn dim(&self) -> usize {
        self.r.len() + 1
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.r
    }
}

/// An eigenvalue bracket: exactly one more eigenvalue lies below `hi` than
/// below `lo` (counting multiplicity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl EigenInterval {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Target bracket width.
pub const EIGEN_TOL: f64 = 1e-12;

/// Number of eigenvalues strictly below `x`.
fn count_below(e2: &[f64], x: f64, pivmin: f64) -> usize {
    let mut d = -x;
    if d.abs() < pivmin {
        d = -pivmin;
    }
    let mut count = usize::from(d < 0.0);
    for &e in e2 {
        d = -x - e / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        count += usize::from(d < 0.0);
    }
    count
}

/// Certified brackets of all eigenvalues, ascending, each no wider than
/// [`EIGEN_TOL`].
pub fn jacobi_eig_intervals(jop: &JacobiOperator) -> Vec<EigenInterval> {
    let n = jop.dim();
    let e2: Vec<f64> = jop.r.iter().map(|r| r * r).collect();
    let max_e2 = e2.iter().cloned().fold(1.0, f64::max);
    let pivmin = f64::MIN_POSITIVE * max_e2;
    // Gershgorin: |λ| ≤ max_i (r_{i−1} + r_i)
    let bound = (0..n)
        .map(|i| {
            let left = if i > 0 { jop.r[i - 1] } else { 0.0 };
            let right = jop.r.get(i).copied().unwrap_or(0.0);
            left + right
        })
        .fold(0.0, f64::max);
    let outer = bound * (1.0 + 4.0 * f64::EPSILON) + pivmin;
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-outer - EIGEN_TOL, outer + EIGEN_TOL);
            while hi - lo > EIGEN_TOL {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count_below(&e2, mid, pivmin) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            EigenInterval { lo, hi }
        })
        .collect()
}

/// All eigenvalues, ascending.
pub fn jacobi_eigs(jop: &JacobiOperator) -> Vec<f64> {
    jacobi_eig_intervals(jop)
        .iter()
        .map(EigenInterval::mid)
        .collect()
}
