pub mod classify;
pub mod energy;
pub mod positivity;
pub mod qspectrum;
pub mod reduce;
pub mod structure;
pub mod verify;

use clap::Args as ClapArgs;
use qdeform_core::DeformationParams;

use crate::{CliError, Record};

/// The deformation parameters shared by most subcommands.
#[derive(Debug, Clone, ClapArgs)]
pub struct DeformArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: f64,
}

impl DeformArgs {
    pub fn params(&self) -> Result<DeformationParams, CliError> {
        Ok(DeformationParams::new(
            self.q, self.alpha, self.beta, self.gamma, self.nu,
        )?)
    }

    pub fn record(&self, rec: &mut Record) {
        rec.param("q", self.q);
        rec.param("alpha", self.alpha);
        rec.param("beta", self.beta);
        rec.param("gamma", self.gamma);
        rec.param("nu", self.nu);
    }
}
