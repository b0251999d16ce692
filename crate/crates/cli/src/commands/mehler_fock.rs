use std::path::Path;

use symspace_core::gl2::mehler_fock::{
    mehler_fock_forward, mehler_fock_inverse, relative_l2, MehlerFock, MehlerFockConfig, Transform,
};
use symspace_core::math::{re, C64};

use crate::config::{Direction, RunConfig};
use crate::error::{CliError, CliResult};
use crate::io::read_columns;
use crate::report::{Report, Table};

fn table(tr: &Transform, x: &str) -> Table {
    let scale = tr.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let complex = tr.values.iter().any(|z| z.im.abs() > 1e-14 * scale.max(1e-300));
    let mut t = if complex { Table::new(&[x, "re", "im"]) } else { Table::new(&[x, "value"]) };
    for (g, z) in tr.grid.iter().zip(&tr.values) {
        t.push(if complex { vec![*g, z.re, z.im] } else { vec![*g, z.re] });
    }
    t
}

pub fn run(cfg: &RunConfig, direction: Direction, m: i32, input: Option<&Path>, s_max: f64) -> CliResult<Report> {
    if cfg.dim_or(2) != 2 {
        return Err(CliError::config("the Mehler–Fock transform is the d = 2 case"));
    }
    let mut mf = MehlerFockConfig { m, s_max, ..MehlerFockConfig::default() };
    if let Some(n) = cfg.common.nodes {
        mf.s_points = n;
    }
    mf.validate()?;
    let mut out = Report::default();
    out.set("m", m);
    out.set("direction", direction);
    out.set("s_max", mf.s_max);
    out.set("s_points", mf.s_points);

    let Some(path) = input else {
        return self_test(cfg, mf, out);
    };
    let cols = read_columns(path, 2, 3)?;
    let (tr, x) = match direction {
        Direction::Forward => {
            if cols.len() != 2 {
                return Err(CliError::config("forward input is two columns (u, f)"));
            }
            let s_grid: Vec<f64> = (0..mf.s_points).map(|k| mf.s_min + (mf.s_max - mf.s_min) * k as f64 / (mf.s_points - 1) as f64).collect();
            (mehler_fock_forward(&cols[0], &cols[1], m, &s_grid, &mf)?, "s")
        }
        Direction::Inverse => {
            let big: Vec<C64> = match cols.len() {
                2 => cols[1].iter().map(|v| re(*v)).collect(),
                _ => cols[1].iter().zip(&cols[2]).map(|(a, b)| C64::new(*a, *b)).collect(),
            };
            let u_max = mf.u_max;
            let count = cfg.common.trials.unwrap_or(400);
            let u_grid: Vec<f64> = (0..count).map(|k| 1.0 + (u_max - 1.0) * k as f64 / (count.max(2) - 1) as f64).collect();
            (mehler_fock_inverse(&cols[0], &big, m, &u_grid, &mf)?, "u")
        }
    };
    out.set("input", path.display().to_string());
    out.set("tail", tr.tail);
    out.table = Some(table(&tr, x));
    Ok(out)
}

/// Round trips f → F → f on e^{−(u−1)} and reports the Plancherel ratio.
fn self_test(cfg: &RunConfig, mf: MehlerFockConfig, mut out: Report) -> CliResult<Report> {
    let engine = MehlerFock::new(mf)?;
    let f = |u: f64| (-(u - 1.0)).exp();
    let orig: Vec<C64> = engine.u_grid().iter().map(|&u| re(f(u))).collect();
    let big = engine.forward(f)?;
    let back = engine.inverse_samples(&big.values)?;
    let round = relative_l2(&engine, &back.values, &orig);
    let planch = engine.plancherel(f)?;
    out.check("round_trip", round, cfg.tol_or(1e-3));
    out.check("plancherel", (planch.ratio - 1.0).abs(), 1e-2);
    out.set("function", "exp(-(u-1))");
    out.set("plancherel", serde_json::json!({ "u_side": planch.u_side, "s_side": planch.s_side, "ratio": planch.ratio }));
    out.table = Some(table(&big, "s"));
    Ok(out)
}
