use clap::ValueEnum;
use qdeform_core::params::{special_case_params, SpecialCase};
use qdeform_core::structure::reduction_deviation;

use crate::{CliError, Record};

/// Range of `n` compared against the catalog formula.
const N_MAX: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    ArikCoon,
    BiedenharnMacfarlane,
    Chung,
    Borzov,
    NuModified,
    QNu,
    HermiteFamily,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[arg(long = "case", value_enum)]
    pub case: CaseName,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
}

fn need(v: Option<f64>, flag: &str, case: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Validation(format!("case {case} needs --{flag}")))
}

fn special_case(a: &Args) -> Result<SpecialCase, CliError> {
    let name = a
        .case
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    let n = name.as_str();
    Ok(match a.case {
        CaseName::ArikCoon => SpecialCase::ArikCoon {
            q: need(a.q, "q", n)?,
        },
        CaseName::BiedenharnMacfarlane => SpecialCase::BiedenharnMacfarlane {
            q: need(a.q, "q", n)?,
        },
        CaseName::Chung => SpecialCase::ChungEtAl {
            q: need(a.q, "q", n)?,
            alpha: need(a.alpha, "alpha", n)?,
            beta: need(a.beta, "beta", n)?,
        },
        CaseName::Borzov => SpecialCase::Borzov {
            q: need(a.q, "q", n)?,
            alpha: need(a.alpha, "alpha", n)?,
            beta: need(a.beta, "beta", n)?,
            gamma: need(a.gamma, "gamma", n)?,
        },
        CaseName::NuModified => SpecialCase::NuModified {
            nu: need(a.nu, "nu", n)?,
        },
        CaseName::QNu => SpecialCase::QNu {
            q: need(a.q, "q", n)?,
            nu: need(a.nu, "nu", n)?,
        },
        CaseName::HermiteFamily => SpecialCase::HermiteFamily {
            q: need(a.q, "q", n)?,
            a: need(a.a, "a", n)?,
            b: need(a.b, "b", n)?,
            c: need(a.c, "c", n)?,
        },
    })
}

pub fn run(a: &Args) -> Result<Record, CliError> {
    let case = special_case(a)?;
    let p = special_case_params(&case)?;
    let mut rec = Record::new("reduce");
    rec.param("case", case.name());
    for (k, v) in [
        ("q", a.q),
        ("alpha", a.alpha),
        ("beta", a.beta),
        ("gamma", a.gamma),
        ("nu", a.nu),
        ("a", a.a),
        ("b", a.b),
        ("c", a.c),
    ] {
        if let Some(v) = v {
            rec.param(k, v);
        }
    }
    rec.summary(
        "mapped",
        vec![
            ("q", p.q().into()),
            ("alpha", p.alpha().into()),
            ("beta", p.beta().into()),
            ("gamma", p.gamma().into()),
            ("nu", p.nu().into()),
            ("index_shift", case.catalog_shift().into()),
        ],
    );
    if case.catalog_f(0).is_some() {
        let dev = reduction_deviation(&case, N_MAX)?;
        rec.summary(
            "deviation",
            vec![
                ("n_max", N_MAX.into()),
                ("max_relative_deviation", dev.into()),
            ],
        );
    } else {
        rec.warn("no separate catalog formula for this case; only the mapping is reported");
    }
    Ok(rec)
}
