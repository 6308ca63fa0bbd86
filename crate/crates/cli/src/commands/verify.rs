use qdeform_core::fock::{
    casimir_c3, fock_rep, verify_relations, verify_useful_formula, ResidualReport,
};
use qdeform_core::params::validate_positivity;

use super::DeformArgs;
use crate::{Cell, CliError, Record, Table};

/// Largest `n` checked for the power identity.
const POWER_MAX: u32 = 4;

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub params: DeformArgs,
    #[arg(long)]
    pub dim: usize,
}

fn row(r: &ResidualReport) -> Vec<Cell> {
    vec![
        r.relation.name().into(),
        r.max_abs_residual_inner.into(),
        r.max_abs_residual_full.into(),
    ]
}

pub fn run(a: &Args) -> Result<Record, CliError> {
    if a.dim < 2 {
        return Err(CliError::Validation(format!(
            "--dim must be at least 2, got {}",
            a.dim
        )));
    }
    let p = a.params.params()?;
    let mut rec = Record::new("verify");
    a.params.record(&mut rec);
    rec.param("dim", a.dim);
    if !validate_positivity(&p).positive {
        rec.warn("structure function is not positive: the Fock rep is not Hermitian");
    }
    let rep = fock_rep(&p, a.dim)?;
    let cols = [
        "relation",
        "max_abs_residual_inner",
        "max_abs_residual_full",
    ];

    let report = verify_relations(&rep, &p);
    let mut rel = Table::new("relations", &cols);
    for r in &report.checked {
        rel.push(row(r));
    }
    rec.tables.push(rel);
    let mut skipped = Table::new("skipped", &["relation", "reason"]);
    for s in &report.skipped {
        skipped.push(vec![s.relation.name().into(), s.reason.into()]);
    }
    rec.tables.push(skipped);

    let mut power = Table::new("power_identity", &cols);
    for n in 1..=POWER_MAX {
        if n as usize > a.dim / 2 {
            rec.warn(format!("power identity n = {n} needs dim >= {}", 2 * n));
            continue;
        }
        power.push(row(&verify_useful_formula(&rep, &p, n)?));
    }
    rec.tables.push(power);

    match casimir_c3(&rep, &p) {
        Ok(c) => {
            let mut t = Table::new("casimir", &cols);
            t.push(row(&c.lower));
            t.push(row(&c.raise));
            rec.tables.push(t);
            let mut d = Table::new("casimir_diagonal", &["n", "value"]);
            for (i, v) in c.diagonal.iter().enumerate() {
                d.push(vec![i.into(), (*v).into()]);
            }
            rec.tables.push(d);
            rec.summary(
                "summary",
                vec![
                    ("max_relation_residual_inner", report.max_inner().into()),
                    ("casimir_spread_inner", c.spread.into()),
                ],
            );
        }
        Err(e) => {
            rec.warn(format!("casimir skipped: {e}"));
            rec.summary(
                "summary",
                vec![
                    ("max_relation_residual_inner", report.max_inner().into()),
                    ("casimir_spread_inner", Cell::Null),
                ],
            );
        }
    }
    Ok(rec)
}
