use std::path::Path;

use serde_json::json;
use symspace_core::decomp::{cartan, iwasawa, polar};
use symspace_core::linalg::Matrix;
use symspace_core::spd::{GroupElement, MetricPoint};

use crate::config::{Mode, RunConfig};
use crate::error::{CliError, CliResult};
use crate::io::{parse_matrix, read_matrix};
use crate::report::{matrix_rows, Report};

fn relative(a: &Matrix, b: &Matrix) -> f64 {
    a.sub(b).norm_max() / b.norm_max().max(f64::MIN_POSITIVE)
}

pub fn run(cfg: &RunConfig, mode: Mode, matrix: Option<&str>, input: Option<&Path>) -> CliResult<Report> {
    let g = match (matrix, input) {
        (Some(text), _) => parse_matrix(text)?,
        (None, Some(path)) => read_matrix(path)?,
        (None, None) => return Err(CliError::config("decompose needs --matrix or --input")),
    };
    let d = g.rows();
    if let Some(want) = cfg.common.dim {
        if want != d {
            return Err(CliError::config(format!("--dim {want} does not match the {d}×{d} input")));
        }
    }
    let det = g.det();
    if !(det > 0.0) || !det.is_finite() {
        return Err(CliError::config(format!("need a positive determinant to reduce to SL({d},R), got {det:e}")));
    }
    // GL → SL by scaling
    let scale = det.powf(1.0 / d as f64);
    let unit = g.scale(1.0 / scale);
    let tol = cfg.tol_or(1e-11);

    let mut out = Report::default();
    out.set("mode", mode);
    out.set("dim", d);
    out.set("input", matrix_rows(&g));
    out.set("scale", scale);
    let rebuilt = match mode {
        Mode::Iwasawa => {
            let f = iwasawa(&GroupElement::special(unit.clone())?)?;
            out.set("factors", json!({ "o": matrix_rows(f.o.matrix()), "h": f.h.entries(), "n": matrix_rows(f.n.matrix()) }));
            out.set("h", f.h.entries());
            f.reconstruct()
        }
        Mode::Cartan => {
            let f = cartan(&GroupElement::special(unit.clone())?)?;
            out.set("factors", json!({ "o1": matrix_rows(f.o1.matrix()), "aplus": f.aplus.entries(), "o2": matrix_rows(f.o2.matrix()) }));
            f.reconstruct()
        }
        Mode::Polar => {
            let q = MetricPoint::from_matrix(&unit)?;
            let f = polar(&q)?;
            out.set("factors", json!({ "o": matrix_rows(f.o.matrix()), "a": f.a.entries() }));
            f.reconstruct()
        }
    };
    out.check("reconstruction", relative(&rebuilt, &unit), tol);
    Ok(out)
}
