//! Point spectrum and orthogonality measure of `Q` on the restricted family.

use alloc::vec::Vec;

use super::pochhammer::{qpochhammer, PochLength};
use super::HermiteFamilyParams;
use crate::error::Result;
use crate::math;

/// Support points `±κ q′^k` and their masses.
#[derive(Debug, Clone, PartialEq)]
pub struct QSpectrum {
    /// `κ = q^{(2a+b)/2}/√(1−q′)`.
    pub kappa: f64,
    /// `+κq′^k, −κq′^k` for `k = 0..=truncation_k`, in that order.
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub truncation_k: u32,
    /// `1 − Σ weights`: the mass beyond `truncation_k`.
    pub mass_deficit: f64,
}

/// Smallest `k` with `q′^k < 1e−12`; 0 when `q′ ∉ (0, 1)`, where the
/// powers do not decay.
pub fn default_k_max(qprime: f64) -> u32 {
    if !(qprime > 0.0 && qprime < 1.0) {
        return 0;
    }
    let k = math::ceil(math::ln(1e-12) / math::ln(qprime));
    let mut k = k.max(0.0) as u32;
    while math::qpow(math::ln(qprime), f64::from(k)) >= 1e-12 {
        k += 1;
    }
    k
}

/// The spectrum with weights
/// `w_k = q′^k (q′^{2k+2}; q′²)_∞ (q′; q′²)_∞ / (2 (q′²; q′²)_∞)` at each of
/// `±κq′^k`.
pub fn q_spectrum(fp: &HermiteFamilyParams, k_max: u32) -> Result<QSpectrum> {
    fp.require_restricted()?;
    fp.require_unit_qprime()?;
    let qp = fp.qprime();
    let qq = qp * qp;
    let ln_qp = math::ln(qp);
    let kappa = math::qpow(fp.ln_q(), fp.a() + 0.5 * fp.b()) / math::sqrt(1.0 - qp);
    let odd = qpochhammer(qp, qq, PochLength::Infinite)?.value;
    let even = qpochhammer(qq, qq, PochLength::Infinite)?.value;
    let mut points = Vec::with_capacity(2 * k_max as usize + 2);
    let mut weights = Vec::with_capacity(points.capacity());
    for k in 0..=k_max {
        let kf = f64::from(k);
        let head = qpochhammer(math::qpow(ln_qp, 2.0 * kf + 2.0), qq, PochLength::Infinite)?.value;
        let w = math::qpow(ln_qp, kf) * head * odd / (2.0 * even);
        let x = kappa * math::qpow(ln_qp, kf);
        points.push(x);
        points.push(-x);
        weights.push(w);
        weights.push(w);
    }
    let mass: f64 = weights.iter().sum();
    Ok(QSpectrum {
        kappa,
        points,
        weights,
        truncation_k: k_max,
        mass_deficit: 1.0 - mass,
    })
}

/// `G_{mn} = Σ_x w(x) P_m(x) P_n(x)` over the spectrum, `m, n ≤ m_max`.
pub fn orthogonality_gram(
    fp: &HermiteFamilyParams,
    m_max: u32,
    k_max: u32,
) -> Result<Vec<Vec<f64>>> {
    let spec = q_spectrum(fp, k_max)?;
    let size = m_max as usize + 1;
    let mut gram = alloc::vec![alloc::vec![0.0; size]; size];
    for k in 0..=k_max {
        let plus = p_at_support(fp.qprime(), m_max, k);
        let w = spec.weights[2 * k as usize];
        for m in 0..size {
            for n in 0..size {
                // P_m(−x) = (−1)^m P_m(x), so the two signs add or cancel.
                if (m + n) % 2 == 0 {
                    gram[m][n] += 2.0 * w * plus[m] * plus[n];
                }
            }
        }
    }
    Ok(gram)
}

/// `P_0, …, P_{m_max}` at `+κq′^k`.
///
/// The recurrence cancels badly at the support points, so this expands the
/// generating function `(t;q′)_k (−t;q′)_∞` instead:
/// `P_m = q′^{−m(m−1)/4} (q′;q′)_m^{1/2} Σ_j e_j q′^{(m−j)(m−j−1)/2}/(q′;q′)_{m−j}`
/// with `e_j` the coefficients of `(t;q′)_k`.
pub(crate) fn p_at_support(qprime: f64, m_max: u32, k: u32) -> Vec<f64> {
    let ln_qp = math::ln(qprime);
    let top = m_max.min(k) as usize;
    // ln|e_j| with sign (−1)^j.
    let mut ln_e = Vec::with_capacity(top + 1);
    ln_e.push(0.0);
    for j in 0..top {
        let jf = j as f64;
        let num = math::ln_1p(-math::qpow(ln_qp, f64::from(k) - jf));
        let den = math::ln_1p(-math::qpow(ln_qp, jf + 1.0));
        ln_e.push(ln_e[j] + jf * ln_qp + num - den);
    }
    // ln (q′;q′)_i
    let mut ln_poch = Vec::with_capacity(m_max as usize + 1);
    ln_poch.push(0.0);
    for i in 1..=m_max as usize {
        ln_poch.push(ln_poch[i - 1] + math::ln_1p(-math::qpow(ln_qp, i as f64)));
    }
    (0..=m_max as usize)
        .map(|m| {
            let mf = m as f64;
            let head = -0.25 * mf * (mf - 1.0) * ln_qp + 0.5 * ln_poch[m];
            (0..=m.min(top))
                .map(|j| {
                    let r = (m - j) as f64;
                    let ln_t = head + ln_e[j] + 0.5 * r * (r - 1.0) * ln_qp - ln_poch[m - j];
                    let t = math::exp(ln_t);
                    if j % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect()
}
