//! Signed reals stored as `(sign, ln|x|)` for values beyond the `f64` range.

use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math;

/// A real number carried as a sign and the natural log of its magnitude.
///
/// Used wherever `q^{γn}` can leave the floating range (large `n`). Zero is
/// represented with sign `0` and `ln_abs = -∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogReal {
    sign: i8,
    ln_abs: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal {
        sign: 0,
        ln_abs: f64::NEG_INFINITY,
    };

    pub const ONE: LogReal = LogReal {
        sign: 1,
        ln_abs: 0.0,
    };

    /// Builds from an `f64`. NaN maps to NaN magnitude with sign 1.
    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogReal {
                sign: if x < 0.0 { -1 } else { 1 },
                ln_abs: math::ln(x.abs()),
            }
        }
    }

    /// `sign · e^{ln_abs}`.
    pub fn from_parts(sign: i8, ln_abs: f64) -> Self {
        if sign == 0 || ln_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogReal {
                sign: sign.signum(),
                ln_abs,
            }
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn ln_abs(self) -> f64 {
        self.ln_abs
    }

    pub fn log10_abs(self) -> f64 {
        self.ln_abs * core::f64::consts::LOG10_E
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// The value as an `f64`; saturates to `±∞` past the range.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * math::exp(self.ln_abs)
        }
    }

    /// The value as a finite `f64`, or `None` if it overflows.
    pub fn finite(self) -> Option<f64> {
        let v = self.to_f64();
        v.is_finite().then_some(v)
    }

    pub fn abs(self) -> Self {
        LogReal {
            sign: self.sign.abs(),
            ln_abs: self.ln_abs,
        }
    }

    /// `|self - other| / max(|self|, |other|)`, computed without overflow.
    pub fn relative_difference(self, other: LogReal) -> f64 {
        let scale = if self.abs().partial_cmp(&other.abs()) == Some(Ordering::Less) {
            other.abs()
        } else {
            self.abs()
        };
        if scale.is_zero() {
            return 0.0;
        }
        let diff = (self - other).abs();
        if diff.is_zero() {
            0.0
        } else {
            math::exp(diff.ln_abs - scale.ln_abs)
        }
    }
}

impl From<f64> for LogReal {
    fn from(x: f64) -> Self {
        LogReal::from_f64(x)
    }
}

impl Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal {
            sign: -self.sign,
            ln_abs: self.ln_abs,
        }
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        LogReal::from_parts(self.sign * rhs.sign, self.ln_abs + rhs.ln_abs)
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln_abs >= rhs.ln_abs {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let ratio = math::exp(small.ln_abs - big.ln_abs);
        if big.sign == small.sign {
            LogReal::from_parts(big.sign, big.ln_abs + math::ln_1p(ratio))
        } else if ratio == 1.0 {
            LogReal::ZERO
        } else {
            LogReal::from_parts(big.sign, big.ln_abs + math::ln_1p(-ratio))
        }
    }
}

impl Sub for LogReal {
    type Output = LogReal;
    fn sub(self, rhs: LogReal) -> LogReal {
        self + (-rhs)
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &LogReal) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.ln_abs.partial_cmp(&other.ln_abs),
                _ => other.ln_abs.partial_cmp(&self.ln_abs),
            },
            ord => Some(ord),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_ordinary_values() {
        for x in [-3.5, -1e-300, 0.0, 2.0, 1e300] {
            let l = LogReal::from_f64(x);
            assert!((l.to_f64() - x).abs() <= 1e-12 * x.abs());
        }
    }

    #[test]
    fn arithmetic_matches_f64() {
        let a = LogReal::from_f64(5.0);
        let b = LogReal::from_f64(-3.0);
        assert!(((a + b).to_f64() - 2.0).abs() < 1e-14);
        assert!(((b + a).to_f64() - 2.0).abs() < 1e-14);
        assert!(((a - a).to_f64()).abs() == 0.0);
        assert!(((a * b).to_f64() + 15.0).abs() < 1e-13);
        assert!(b < a);
        assert!(-a < b);
    }

    #[test]
    fn carries_values_past_the_range() {
        let big = LogReal::from_parts(1, 1000.0);
        assert_eq!(big.finite(), None);
        let ratio = (big * LogReal::from_f64(2.0)).ln_abs() - big.ln_abs();
        assert!((ratio - core::f64::consts::LN_2).abs() < 1e-12);
        assert!(big.relative_difference(big) == 0.0);
    }
}
