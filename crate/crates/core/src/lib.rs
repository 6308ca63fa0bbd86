//! Numerics for the unified `(q; α, β, γ; ν)`-deformed oscillator algebra.
//!
//! The crate is `no_std` (it needs `alloc`) and free of IO. It covers:
//!
//! - [`params`]: the deformation parameter space, positivity regimes,
//!   the `(τ, ρ, μ)` reparametrization and the catalog of special cases;
//! - [`structure`]: the structure function `f(n)`, the bracket
//!   `[n; α, γ; νK]` and its generating function;
//! - [`fock`]: truncated matrix representations and residual checks of the
//!   defining relations and the Casimir operator;
//! - [`representations`]: the eigenvalue sequence `λ_n` for general ground
//!   data and the four-class classification of representations;
//! - [`qhermite`]: the position operator `Q = a + a†` as a Jacobi matrix,
//!   generalized discrete q-Hermite I polynomials, and the spectrum of `Q`;
//! - [`energy`]: the spectrum of the free Hamiltonian and its asymptotics.
//!
//! All values are immutable once built and every operation is a pure
//! function.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod energy;
mod error;
pub mod fock;
mod logreal;
mod math;
pub mod params;
pub mod qhermite;
pub mod representations;
pub mod structure;

pub use error::{Error, Result};
pub use logreal::LogReal;
pub use params::DeformationParams;
