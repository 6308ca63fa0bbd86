use qdeform_core::representations::{
    classify, invariant_combination, lambda_seq_log, RepClass, RepSpec, DEFAULT_WINDOW,
};

use super::DeformArgs;
use crate::{CliError, Record, Table};

/// Half-width of the λ table around the cutoffs.
const TABLE_SPAN: i64 = 20;

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub params: DeformArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa0: f64,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: f64,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    pub window: u32,
}

pub fn run(a: &Args) -> Result<Record, CliError> {
    let p = a.params.params()?;
    let spec = RepSpec::new(p, a.kappa0, a.b, a.lambda0)?;
    let mut rec = Record::new("classify");
    a.params.record(&mut rec);
    rec.param("kappa0", a.kappa0);
    rec.param("B", a.b);
    rec.param("lambda0", a.lambda0);
    rec.param("window", a.window);
    let c = classify(&spec, a.window)?;
    let dim = match c.class {
        RepClass::FiniteDim(d) => Some(d),
        _ => None,
    };
    rec.summary(
        "class",
        vec![
            ("class", c.class.name().into()),
            ("dim", dim.into()),
            ("n1", c.n1.into()),
            ("n2", c.n2.into()),
            ("invariant", invariant_combination(&spec).into()),
            ("witness", c.witness.clone().into()),
        ],
    );
    let lo = c.n1.unwrap_or(-TABLE_SPAN);
    let hi = c.n2.unwrap_or(lo.max(0) + TABLE_SPAN);
    let mut t = Table::new("lambda", &["n", "lambda"]);
    for n in lo..=hi {
        t.push(vec![n.into(), lambda_seq_log(&spec, n).into()]);
    }
    rec.tables.push(t);
    Ok(rec)
}
