use qdeform_core::params::validate_positivity;
use qdeform_core::DeformationParams;

use crate::{CliError, Record};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: f64,
}

pub fn run(a: &Args) -> Result<Record, CliError> {
    // β only rescales f and plays no part in positivity.
    let p = DeformationParams::new(a.q, a.alpha, 0.0, a.gamma, a.nu)?;
    let v = validate_positivity(&p);
    let mut rec = Record::new("positivity");
    rec.param("q", a.q);
    rec.param("alpha", a.alpha);
    rec.param("gamma", a.gamma);
    rec.param("nu", a.nu);
    rec.summary(
        "verdict",
        vec![
            ("positive", v.positive.into()),
            ("regime", v.regime.name().into()),
            ("q_gamma", p.q_gamma().into()),
            ("q_alpha", p.q_alpha().into()),
            ("nu_low", v.bound_low.into()),
            ("nu_high", v.bound_high.into()),
        ],
    );
    Ok(rec)
}
