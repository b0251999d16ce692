mod algebra;
mod basis;
mod decompose;
mod mehler_fock;
mod roots;
mod spherical;

use symspace_core::roots::{rho, Normalization, SpectralParameter};
use symspace_core::spherical::Quadrature;

use crate::config::{Command, NormalizationArg, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::Report;

pub fn dispatch(cfg: &RunConfig) -> CliResult<Report> {
    match &cfg.command {
        Command::VerifyAlgebra => algebra::run(cfg),
        Command::RootSystem => roots::run(cfg),
        Command::Decompose { mode, matrix, input } => decompose::run(cfg, *mode, matrix.as_deref(), input.as_deref()),
        Command::SphericalTable { lambda, t_max, count, points_file } => {
            let lambda = lambda.as_deref().unwrap_or("0.5");
            match points_file {
                Some(path) => spherical::points(cfg, lambda, path),
                None => spherical::table(cfg, lambda, *t_max, *count),
            }
        }
        Command::RadialCheck { lambda, normalization } => spherical::radial(cfg, lambda.as_deref().unwrap_or("0"), (*normalization).into()),
        Command::BasisEval { series, r, s, m, t, points_file } => basis::run(cfg, *series, *r, *s, *m, *t, points_file.as_deref()),
        Command::MehlerFock { direction, m, input, s_max } => mehler_fock::run(cfg, *direction, *m, input.as_deref(), *s_max),
        Command::Properties { lambda } => spherical::properties(cfg, lambda.as_deref().unwrap_or("0.9")),
    }
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Trace => Normalization::Trace,
            NormalizationArg::Killing => Normalization::Killing,
            NormalizationArg::CasimirMatched => Normalization::CasimirMatched,
        }
    }
}

pub(crate) fn require_dim(d: usize, lo: usize, hi: usize) -> CliResult<usize> {
    if d < lo || d > hi {
        return Err(CliError::config(format!("--dim must lie in {lo}..={hi}, got {d}")));
    }
    Ok(d)
}

/// Comma-separated λ; a single value s stands for s·ρ/ρ₁, which is (s, −s) at d = 2.
pub(crate) fn parse_lambda(text: &str, d: usize) -> CliResult<SpectralParameter> {
    let vals: Result<Vec<f64>, _> = text.split(',').map(|v| v.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| CliError::config(format!("--lambda '{text}': {e}")))?;
    if vals.len() == 1 && d >= 2 {
        let r = rho(d);
        let top = r.entries()[0];
        return SpectralParameter::new(r.entries().iter().map(|x| vals[0] * x / top).collect()).map_err(|e| CliError::config(e.to_string()));
    }
    if vals.len() != d {
        return Err(CliError::config(format!("--lambda needs {d} comma-separated entries, got {}", vals.len())));
    }
    SpectralParameter::new(vals).map_err(|e| CliError::config(format!("--lambda: {e}")))
}

/// SO(2) trapezoid at d = 2 unless only --trials is given; Haar Monte Carlo otherwise.
pub(crate) fn quadrature(cfg: &RunConfig, d: usize, default_samples: usize) -> Quadrature {
    let c = &cfg.common;
    if d == 2 && (c.nodes.is_some() || c.trials.is_none()) {
        Quadrature::So2Trapezoid { nodes: c.nodes.unwrap_or(512) }
    } else {
        Quadrature::HaarMc { samples: c.trials.unwrap_or(default_samples), seed: cfg.seed() }
    }
}

pub(crate) fn quadrature_json(q: Quadrature) -> serde_json::Value {
    match q {
        Quadrature::So2Trapezoid { nodes } => serde_json::json!({ "rule": "so2-trapezoid", "nodes": nodes }),
        Quadrature::HaarMc { samples, seed } => serde_json::json!({ "rule": "haar-monte-carlo", "samples": samples, "seed": seed }),
    }
}
