use serde_json::json;
use symspace_core::operator::verify_algebra;

use super::require_dim;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::report::Report;

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let d = require_dim(cfg.dim_or(3), 1, 6)?;
    let trials = cfg.common.trials.unwrap_or(100);
    let tol = cfg.tol_or(1e-9);
    let rep = verify_algebra(d, trials, tol, cfg.seed())?;
    let mut out = Report::default();
    for f in &rep.families {
        out.check(format!("family:{}", f.family), f.max_residual, tol);
    }
    out.check("max_residual", rep.max_residual(), tol);
    out.set("dim", d);
    out.set("trials", trials);
    out.set(
        "families",
        rep.families.iter().map(|f| json!({ "family": f.family, "max_residual": f.max_residual, "checks": f.checks })).collect::<Vec<_>>(),
    );
    out.set("failures", &rep.failures);
    Ok(out)
}
