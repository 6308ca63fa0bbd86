use qdeform_core::structure::StructureFunction;
use qdeform_core::{Error, LogReal};

use super::DeformArgs;
use crate::{Cell, CliError, Record, Table};

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub params: DeformArgs,
    /// f(0); the Fock convention is 0.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub f0: f64,
    #[arg(long)]
    pub n_max: u32,
}

pub fn run(a: &Args) -> Result<Record, CliError> {
    let p = a.params.params()?;
    let sf = StructureFunction::new(p, a.f0)?;
    let mut rec = Record::new("structure");
    a.params.record(&mut rec);
    rec.param("f0", a.f0);
    rec.param("n_max", a.n_max);
    if let Some(w) = sf.condition_warning() {
        rec.warn(format!(
            "q^alpha and q^gamma nearly coincide (relative gap {:e}); closed form is ill-conditioned",
            w.relative_gap
        ));
    }
    let rec_table = match sf.recurrence_table(a.n_max) {
        Ok(t) => t,
        Err(Error::Overflow { n, .. }) => {
            rec.warn(format!("recurrence leaves the floating range at n = {n}"));
            sf.recurrence_table((n - 1).max(0) as u32)?
        }
        Err(e) => return Err(e.into()),
    };
    let mut t = Table::new("structure", &["n", "f_closed", "f_recurrence", "residual"]);
    let mut worst = 0.0f64;
    for n in 0..=a.n_max {
        let closed: LogReal = sf.closed_log(n);
        let recur = rec_table.get(n as usize).copied();
        let residual = recur.and_then(|r| {
            let c = closed.to_f64();
            c.is_finite().then(|| (c - r).abs() / c.abs().max(1.0))
        });
        if let Some(r) = residual {
            worst = worst.max(r);
        }
        t.push(vec![n.into(), closed.into(), recur.into(), residual.into()]);
    }
    rec.tables.push(t);
    rec.summary("summary", vec![("max_residual", Cell::Num(worst))]);
    Ok(rec)
}
