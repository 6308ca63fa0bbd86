use crate::error::{Error, Result};

/// Length of a q-Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLength {
    Finite(u32),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pochhammer {
    pub value: f64,
    /// Bound on the neglected tail of an infinite product; 0 when finite.
    pub tail_bound: f64,
}

/// Cutoff on `|x·qq^j|` for infinite products.
const TAIL_CUTOFF: f64 = 1e-17;

/// `(x; qq)_n = ∏_{j<n} (1 − x·qq^j)`.
pub fn qpochhammer(x: f64, qq: f64, len: PochLength) -> Result<Pochhammer> {
    match len {
        PochLength::Finite(n) => {
            let mut value = 1.0;
            let mut t = x;
            for _ in 0..n {
                value *= 1.0 - t;
                t *= qq;
            }
            Ok(Pochhammer {
                value,
                tail_bound: 0.0,
            })
        }
        PochLength::Infinite => {
            if qq.is_nan() || qq.abs() >= 1.0 {
                return Err(Error::DivergentProduct);
            }
            let mut value = 1.0;
            let mut t = x;
            while t.abs() >= TAIL_CUTOFF {
                value *= 1.0 - t;
                t *= qq;
            }
            // |∏_{j≥j0}(1 − t_j) − 1| ≤ e^{Σ|t_j|} − 1 ≤ 2Σ|t_j| here.
            let tail = 2.0 * t.abs() / (1.0 - qq.abs());
            Ok(Pochhammer {
                value,
                tail_bound: value.abs() * tail,
            })
        }
    }
}
