use qdeform_core::qhermite::{
    default_k_max, jacobi_eig_intervals, orthogonality_gram, q_spectrum, selfadjointness_case,
    HermiteFamilyParams, JacobiOperator, SeriesVerdict,
};
use qdeform_core::Error;

use crate::{Cell, CliError, Record, Table};

/// Largest degree in the orthogonality table.
const GRAM_MAX: u32 = 8;

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    /// Last support index; default is the smallest k with q'^k < 1e-12.
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Size of the finite section.
    #[arg(long, default_value_t = 200)]
    pub dim: usize,
}

pub fn run(a: &Args) -> Result<Record, CliError> {
    let fp = HermiteFamilyParams::new(a.q, a.a, a.b, a.c)?;
    if a.dim < 2 {
        return Err(CliError::Validation(format!(
            "--dim must be at least 2, got {}",
            a.dim
        )));
    }
    let mut rec = Record::new("qspectrum");
    rec.param("q", a.q);
    rec.param("a", a.a);
    rec.param("b", a.b);
    rec.param("c", a.c);
    rec.param("qprime", fp.qprime());
    rec.param("dim", a.dim);

    match selfadjointness_case(a.q, a.a, a.c) {
        Ok(s) => {
            let verdict = match s.verdict {
                SeriesVerdict::Divergent => "divergent",
                SeriesVerdict::Convergent => "convergent",
            };
            rec.summary(
                "selfadjointness",
                vec![
                    ("series", verdict.into()),
                    (
                        "essentially_self_adjoint",
                        (s.verdict == SeriesVerdict::Divergent).into(),
                    ),
                    ("exponent", s.exponent.into()),
                    ("probe_terms", s.probe.terms.into()),
                    ("probe_ln_sum_half", s.probe.ln_sum_half.into()),
                    ("probe_ln_sum_full", s.probe.ln_sum_full.into()),
                ],
            );
        }
        Err(e @ Error::BoundaryCase(_)) => {
            rec.warn(format!("self-adjointness not decided: {e}"));
            rec.summary(
                "selfadjointness",
                vec![
                    ("series", "undecided".into()),
                    ("essentially_self_adjoint", Cell::Null),
                    ("exponent", Cell::Null),
                    ("probe_terms", Cell::Null),
                    ("probe_ln_sum_half", Cell::Null),
                    ("probe_ln_sum_full", Cell::Null),
                ],
            );
        }
        Err(e) => return Err(e.into()),
    }

    let k_max = a.kmax.unwrap_or_else(|| default_k_max(fp.qprime()));
    match q_spectrum(&fp, k_max) {
        Ok(s) => {
            rec.param("kmax", k_max);
            let mut t = Table::new("points", &["k", "x_plus", "x_minus", "weight"]);
            for k in 0..=k_max as usize {
                t.push(vec![
                    k.into(),
                    s.points[2 * k].into(),
                    s.points[2 * k + 1].into(),
                    s.weights[2 * k].into(),
                ]);
            }
            rec.tables.push(t);
            let gram = orthogonality_gram(&fp, GRAM_MAX, k_max)?;
            let mut g = Table::new("orthogonality", &["m", "n", "sum"]);
            for (m, row) in gram.iter().enumerate() {
                for (n, v) in row.iter().enumerate() {
                    g.push(vec![m.into(), n.into(), (*v).into()]);
                }
            }
            rec.tables.push(g);
            rec.summary(
                "measure",
                vec![
                    ("kappa", s.kappa.into()),
                    ("mass_deficit", s.mass_deficit.into()),
                ],
            );
        }
        Err(Error::RestrictionViolated(msg)) => {
            rec.warn(format!("no point spectrum table: {msg}"));
        }
        Err(e) => return Err(e.into()),
    }

    let jop = JacobiOperator::from_family(&fp, a.dim)?;
    let mut t = Table::new("eigenvalues", &["index", "value", "lo", "hi"]);
    for (i, iv) in jacobi_eig_intervals(&jop).iter().enumerate() {
        t.push(vec![i.into(), iv.mid().into(), iv.lo.into(), iv.hi.into()]);
    }
    rec.tables.push(t);
    Ok(rec)
}
