use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} overflowed the floating range at n = {n}")]
    Overflow { what: &'static str, n: i64 },
    #[error("lambda_{index} = {value} is negative; not representable")]
    NegativeLambda { index: i64, value: f64 },
    #[error("operation divides by nu, which is zero")]
    NuZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("classification inconsistent: analytic says {analytic}, scan says {scan}")]
    Inconsistent { analytic: String, scan: String },
    #[error("lambda_{index} = {value} is negative before the sequence reaches a zero")]
    NegativeLambdaInterior { index: i64, value: f64 },
    #[error("representation is not finite-dimensional")]
    NotFiniteDim,
    #[error("representation is not unbounded")]
    NotUnbounded,
    #[error("boundary case: {0}")]
    BoundaryCase(&'static str),
    #[error("infinite product diverges for |q| >= 1")]
    DivergentProduct,
    #[error("parameter restriction violated: {0}")]
    RestrictionViolated(String),
    #[error("mu = 0: the closed form is 0/0")]
    MuZero,
    #[error("energy spectrum does not saturate for these parameters")]
    NotSaturating,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
