use qdeform_core::energy::{
    asymptotic_class, energy_levels, spacing, spacing_as_printed, spacing_direct, AsymptoticCase,
    EnergySpec, SpacingRoute,
};

use super::DeformArgs;
use crate::{Cell, CliError, Record, Table};

/// Relative agreement expected between the level forms.
const LEVEL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    #[command(flatten)]
    pub params: DeformArgs,
    #[arg(long, default_value_t = 100)]
    pub n_max: u32,
    /// ħω₀.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
}

pub fn run(a: &Args) -> Result<Record, CliError> {
    let p = a.params.params()?;
    let es = EnergySpec::new(p, a.scale)?;
    let mut rec = Record::new("energy");
    a.params.record(&mut rec);
    rec.param("n_max", a.n_max);
    rec.param("scale", a.scale);
    let r = es.reparam();
    rec.param("tau", r.tau);
    rec.param("rho", r.rho);
    rec.param("mu", r.mu);

    let mut levels = Table::new(
        "levels",
        &["n", "energy", "energy_closed", "relative_deviation"],
    );
    let mut worst = 0.0f64;
    for l in energy_levels(&es, a.n_max) {
        worst = worst.max(l.relative_deviation);
        levels.push(vec![
            l.n.into(),
            l.value.into(),
            l.closed.into(),
            l.relative_deviation.into(),
        ]);
    }
    if worst > LEVEL_TOL {
        rec.warn(format!(
            "closed forms deviate from f(n)+f(n+1) by up to {worst:e}"
        ));
    }
    rec.tables.push(levels);

    let mut sp = Table::new(
        "spacing",
        &["n", "spacing", "direct", "as_printed", "route"],
    );
    let mut overflowed = false;
    for n in 0..=a.n_max / 2 {
        let s = match spacing(&es, n) {
            Ok(s) => s,
            Err(_) => {
                overflowed = true;
                break;
            }
        };
        let route = match s.route {
            SpacingRoute::ClosedForm => "closed-form",
            SpacingRoute::DirectDifference => "direct-difference",
        };
        sp.push(vec![
            n.into(),
            s.value.into(),
            spacing_direct(&es, n).ok().into(),
            spacing_as_printed(&es, n).ok().into(),
            route.into(),
        ]);
    }
    if overflowed {
        rec.warn("spacing leaves the floating range; table truncated");
    }
    rec.tables.push(sp);

    let v = asymptotic_class(&es)?;
    let e_max = match v.case {
        AsymptoticCase::SaturatesToEmax(e) => Some(e),
        _ => None,
    };
    rec.summary(
        "asymptotic",
        vec![
            ("case", v.case.name().into()),
            ("driver", v.driver.into()),
            ("e_max", e_max.into()),
            ("corroborated", v.corroborated.into()),
            ("probe_levels", v.probe.n_max.into()),
            ("probe_last", v.probe.last.into()),
            ("probe_peak", v.probe.peak.into()),
            ("probe_peak_index", v.probe.peak_index.into()),
            ("saturation_gap", v.probe.saturation_gap.into()),
            (
                "below_e_max",
                v.probe.below_emax.map_or(Cell::Null, Cell::Bool),
            ),
        ],
    );
    if !v.corroborated {
        rec.warn("numeric probe does not corroborate the asymptotic verdict");
    }
    Ok(rec)
}
