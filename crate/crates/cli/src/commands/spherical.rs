
use std::path::Path;

use serde_json::json;
use symspace_core::gl2::conical::{conical_p, ConicalEvaluator};
use symspace_core::roots::{rho, Normalization, SpectralParameter};
use symspace_core::spd::{random_spd, rng_for, GroupElement};
use symspace_core::spherical::radial::{harish_chandra_check, radial_laplacian_check, Stencil};
use symspace_core::spherical::{check_properties, PropertyConfig, SphericalEvaluator};

use super::{parse_lambda, quadrature, quadrature_json, require_dim};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::io::read_matrices;
use crate::report::{complex, Report, Table};

/// H = t·ρ, so the gap t₁ − t_d grows like (d−1)t and equals t at d = 2.
fn along_rho(d: usize, t: f64) -> Vec<f64> {
    rho(d).entries().iter().map(|r| t * r).collect()
}

pub fn table(cfg: &RunConfig, lambda: &str, t_max: f64, count: usize) -> CliResult<Report> {
    let d = require_dim(cfg.dim_or(2), 2, 6)?;
    if count < 1 || !(t_max >= 0.0) || !t_max.is_finite() {
        return Err(CliError::config("--count must be positive and --t-max finite and non-negative"));
    }
    let lam = parse_lambda(lambda, d)?;
    let quad = quadrature(cfg, d, 20_000);
    let ev = SphericalEvaluator::new(lam.clone(), quad)?;
    let deterministic = quad.is_deterministic();
    let cev = ConicalEvaluator::default();
    let s = lam.entries()[0];

    let mut columns = vec!["t", "re", "im", "error"];
    if d == 2 {
        columns.push("conical");
    }
    let mut tab = Table::new(&columns);
    let mut conical_gap: f64 = 0.0;
    let mut conical_sigma: f64 = 0.0;
    let mut identity = None;
    for k in 0..count {
        let t = if count == 1 { 0.0 } else { t_max * k as f64 / (count - 1) as f64 };
        let v = ev.eval_cartan(&along_rho(d, t))?;
        if k == 0 {
            identity = Some(v);
        }
        let mut row = vec![t, v.value.re, v.value.im, v.error];
        if d == 2 {
            let p = conical_p(s, 0, t.cosh(), &cev)?;
            let gap = (v.value - p).norm();
            if gap > conical_gap {
                conical_gap = gap;
                conical_sigma = v.error;
            }
            row.push(p);
        }
        tab.push(row);
    }

    let mut out = Report::default();
    let one = identity.expect("count ≥ 1");
    out.check("identity", (one.value - 1.0).norm(), 1e-12);
    if d == 2 {
        let bound = if deterministic { cfg.tol_or(1e-8) } else { cfg.tol_or(0.0).max(4.0 * conical_sigma + 1e-12) };
        out.check("conical_agreement", conical_gap, bound);
    }
    out.set("dim", d);
    out.set("lambda", lam.entries());
    out.set("quadrature", quadrature_json(quad));
    out.set("direction", "H = t·ρ");
    out.set("value_at_identity", complex(one.value));
    out.table = Some(tab);
    Ok(out)
}

/// φ_λ at user-supplied group elements, scaled to unit determinant.
pub fn points(cfg: &RunConfig, lambda: &str, path: &Path) -> CliResult<Report> {
    let mats = read_matrices(path)?;
    let d = mats.first().map(|m| m.rows()).ok_or_else(|| CliError::config("points file is empty"))?;
    if let Some(want) = cfg.common.dim {
        if want != d {
            return Err(CliError::config(format!("--dim {want} does not match {d}×{d} points")));
        }
    }
    require_dim(d, 2, 6)?;
    let lam = parse_lambda(lambda, d)?;
    let quad = quadrature(cfg, d, 20_000);
    let ev = SphericalEvaluator::new(lam.clone(), quad)?;
    let mut tab = Table::new(&["g_id", "re", "im", "stderr"]);
    let mut bound_gap: f64 = 0.0;
    for (k, m) in mats.iter().enumerate() {
        if m.rows() != d {
            return Err(CliError::config(format!("point {k} is not {d}×{d}")));
        }
        let det = m.det();
        if !(det > 0.0) {
            return Err(CliError::config(format!("point {k} has determinant {det:e}; need > 0")));
        }
        let g = GroupElement::special(m.scale(det.powf(-1.0 / d as f64)))?;
        let v = ev.eval(&g)?;
        // |φ| ≤ 1 up to the error estimate
        bound_gap = bound_gap.max(v.value.norm() - 1.0 - 3.0 * v.error);
        tab.push(vec![k as f64, v.value.re, v.value.im, v.error]);
    }
    let mut out = Report::default();
    out.check("boundedness", bound_gap, cfg.tol_or(1e-10));
    out.set("dim", d);
    out.set("lambda", lam.entries());
    out.set("quadrature", quadrature_json(quad));
    out.set("points_file", path.display().to_string());
    out.table = Some(tab);
    Ok(out)
}

fn default_grid(d: usize) -> Vec<Vec<f64>> {
    if d == 3 {
        return vec![vec![0.6, 0.0, -0.6], vec![1.0, 0.1, -1.1], vec![0.9, -0.2, -0.7]];
    }
    [0.6, 1.0, 1.4].iter().map(|&t| along_rho(d, t)).collect()
}

pub fn radial(cfg: &RunConfig, lambda: &str, normalization: Normalization) -> CliResult<Report> {
    let d = require_dim(cfg.dim_or(2), 2, 5)?;
    let lam = parse_lambda(lambda, d)?;
    let quad = quadrature(cfg, d, 20_000);
    let ev = SphericalEvaluator::new(lam.clone(), quad)?;
    let grid = default_grid(d);
    let chk = radial_laplacian_check(&ev, &grid, normalization, &Stencil::central4(1e-3), 0.2)?;

    // Harish-Chandra constants at λ and ρ/2 on random metric points
    let mus = vec![lam.clone(), SpectralParameter::new(rho(d).entries().iter().map(|x| 0.5 * x).collect())?];
    let pts: Vec<Vec<f64>> =
        (0..5).map(|k| random_spd(&mut rng_for(cfg.seed(), 41, k), d, 0.5, false).chart().to_vec()).collect();
    let hc = harish_chandra_check(d, &mus, &pts, normalization)?;

    let eig_gap = (chk.eigenvalue.re - chk.expected).abs();
    let default_tol = if quad.is_deterministic() { 1e-3 } else { 5e-2 };
    let mut out = Report::default();
    out.check("eigenvalue", eig_gap, cfg.tol_or(default_tol));
    out.check("harish_chandra", hc.max_residual(), 1e-8);
    out.set("dim", d);
    out.set("lambda", lam.entries());
    out.set("normalization", normalization.as_str());
    out.set("quadrature", quadrature_json(quad));
    out.set("grid", &grid);
    out.set(
        "radial",
        json!({
            "eigenvalue": complex(chk.eigenvalue),
            "expected": chk.expected,
            "pointwise_residual": chk.residual,
            "quadrature_error": chk.quadrature_error,
        }),
    );
    out.set(
        "harish_chandra",
        json!({
            "conversion": hc.conversion,
            "rows": hc.rows.iter().map(|r| json!({ "mu": r.mu, "measured": r.measured, "expected": r.expected, "residual": r.residual })).collect::<Vec<_>>(),
        }),
    );
    Ok(out)
}

pub fn properties(cfg: &RunConfig, lambda: &str) -> CliResult<Report> {
    let d = require_dim(cfg.dim_or(2), 2, 5)?;
    let lam = parse_lambda(lambda, d)?;
    let quad = quadrature(cfg, d, 20_000);
    let ev = SphericalEvaluator::new(lam.clone(), quad)?;
    let pc = PropertyConfig { seed: cfg.seed(), tolerance: cfg.tol_or(PropertyConfig::default().tolerance), ..PropertyConfig::default() };
    let rep = check_properties(&ev, &pc)?;
    let mut out = Report::default();
    for r in &rep.results {
        out.check(r.name, r.residual, r.bound);
    }
    out.set("dim", d);
    out.set("lambda", lam.entries());
    out.set("quadrature", quadrature_json(quad));
    out.set("deterministic", rep.deterministic);
    out.set("samples_per_property", pc.samples);
    Ok(out)
}
