use std::path::Path;

use serde_json::json;
use symspace_core::gl2::basis::{
    compact_jet, ladder_sample_points, noncompact_casimir, noncompact_jet, BasisLabelCompact, BasisLabelNoncompact,
    NoncompactProfile, Parity,
};
use symspace_core::gl2::conical::ConicalEvaluator;
use symspace_core::operator::casimir;
use symspace_core::spd::MetricPoint;

use crate::config::{RunConfig, Series};
use crate::error::{CliError, CliResult};
use crate::io::read_matrices;
use crate::report::{complex, Report, Table};

pub fn run(cfg: &RunConfig, series: Series, r: f64, s: f64, m: i32, t: f64, input: Option<&Path>) -> CliResult<Report> {
    if cfg.dim_or(2) != 2 {
        return Err(CliError::config("basis-eval is defined for d = 2 only"));
    }
    let points: Vec<Vec<f64>> = match input {
        Some(path) => read_matrices(path)?
            .iter()
            .map(|mat| MetricPoint::from_matrix(mat).map(|p| p.chart().to_vec()))
            .collect::<Result<_, _>>()?,
        None => ladder_sample_points(cfg.common.trials.unwrap_or(8), cfg.seed()),
    };
    if points.iter().any(|p| p.len() != 3) {
        return Err(CliError::config("basis-eval needs 2×2 matrices"));
    }
    let ev = ConicalEvaluator::default();
    let (jets, lambda, label) = match series {
        Series::Compact => {
            let label = BasisLabelCompact::new(r, s, m)?;
            let jets = points.iter().map(|x| compact_jet(&label, x, &ev)).collect::<Result<Vec<_>, _>>()?;
            (jets, label.lambda(), json!({ "series": "compact", "r": r, "s": s, "m": m }))
        }
        Series::Noncompact => {
            let label = BasisLabelNoncompact::new(r, s, t)?;
            let profile = NoncompactProfile::new(s, t, Parity::Even);
            let jets = points.iter().map(|x| noncompact_jet(&label, &profile, x)).collect::<Result<Vec<_>, _>>()?;
            (jets, label.lambda(), json!({ "series": "noncompact", "r": r, "s": s, "t": t }))
        }
    };
    let c2 = match series {
        Series::Compact => casimir(2),
        Series::Noncompact => noncompact_casimir(),
    };

    let mut tab = Table::new(&["q11", "q12", "q22", "re", "im", "casimir_residual"]);
    let mut worst: f64 = 0.0;
    for (x, j) in points.iter().zip(&jets) {
        let v = j.value();
        let res = (c2.apply(j, x)? - v * lambda).norm() / v.norm().max(f64::MIN_POSITIVE);
        worst = worst.max(res);
        tab.push(vec![x[0], x[1], x[2], v.re, v.im, res]);
    }
    let mut out = Report::default();
    out.check("casimir_eigen", worst, cfg.tol_or(1e-6));
    out.set("label", label);
    out.set("casimir_eigenvalue", lambda);
    out.set("values", jets.iter().map(|j| complex(j.value())).collect::<Vec<_>>());
    out.table = Some(tab);
    Ok(out)
}
