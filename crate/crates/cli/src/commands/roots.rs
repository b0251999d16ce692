use serde_json::json;
use symspace_core::roots::{weyl_group, weyl_orbit, Normalization, RestrictedRootSystem};

use super::require_dim;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::report::Report;

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let d = require_dim(cfg.dim_or(2), 2, 8)?;
    let sys = RestrictedRootSystem::new(d)?;
    let rho = sys.rho();
    let positives = sys.positives();

    // 2ρ = Σ positive roots
    let mut two_rho = vec![0.0; d];
    for r in &positives {
        for (acc, v) in two_rho.iter_mut().zip(r.vector(d)) {
            *acc += v;
        }
    }
    let rho_err = two_rho.iter().zip(rho.entries()).map(|(a, b)| (a - 2.0 * b).abs()).fold(0.0, f64::max);
    let factorial: usize = (1..=d).product();
    let weyl = weyl_group(d);
    let coeffs_ok = positives.iter().all(|r| sys.simple_coefficients(*r).iter().all(|c| *c >= 0));

    let mut out = Report::default();
    out.check("two_rho_vs_positive_sum", rho_err, 1e-15);
    out.check_flag("positive_count", positives.len() == d * (d - 1) / 2);
    out.check_flag("weyl_order", weyl.len() == factorial && weyl_orbit(&rho).len() == factorial);
    out.check_flag("positive_simple_coefficients", coeffs_ok);

    let root_json = |r: &symspace_core::roots::Root| {
        json!({ "i": r.i, "j": r.j, "vector": r.vector(d), "simple_coefficients": sys.simple_coefficients(*r), "multiplicity": sys.multiplicity(*r) })
    };
    out.set("dim", d);
    out.set("rank", sys.rank());
    out.set("roots", sys.roots().iter().map(root_json).collect::<Vec<_>>());
    out.set("positive", positives.iter().map(root_json).collect::<Vec<_>>());
    out.set("simple", sys.simples().iter().map(root_json).collect::<Vec<_>>());
    out.set("rho", rho.entries());
    out.set("chamber", sys.chamber_description());
    out.set("weyl_order", weyl.len());
    out.set(
        "rho_norm_sq",
        json!({
            "trace": rho.dual_norm_sq(Normalization::Trace),
            "killing": rho.dual_norm_sq(Normalization::Killing),
            "casimir-matched": rho.dual_norm_sq(Normalization::CasimirMatched),
        }),
    );
    Ok(out)
}
