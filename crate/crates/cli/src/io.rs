use std::fs;
use std::path::Path;

use symspace_core::linalg::Matrix;

use crate::error::{CliError, CliResult};

pub fn parse_matrix(text: &str) -> CliResult<Matrix> {
    let rows: Vec<Vec<f64>> =
        serde_json::from_str(text).map_err(|e| CliError::config(format!("matrix must be a row-major JSON array of arrays: {e}")))?;
    to_matrix(rows)
}

fn to_matrix(rows: Vec<Vec<f64>>) -> CliResult<Matrix> {
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(CliError::config("matrix must be square and non-empty"));
    }
    Ok(Matrix::from_rows(&rows)?)
}

pub fn read_matrix(path: &Path) -> CliResult<Matrix> {
    parse_matrix(&read(path)?)
}

pub fn read_matrices(path: &Path) -> CliResult<Vec<Matrix>> {
    let list: Vec<Vec<Vec<f64>>> = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::config(format!("{}: expected a JSON list of matrices: {e}", path.display())))?;
    list.into_iter().map(to_matrix).collect()
}

/// Numeric columns of a headerless or headed CSV file; `#` lines are skipped.
pub fn read_columns(path: &Path, min: usize, max: usize) -> CliResult<Vec<Vec<f64>>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(false).comment(Some(b'#')).trim(csv::Trim::All).from_path(path)?;
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for (k, rec) in rd.records().enumerate() {
        let rec = rec?;
        let parsed: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        let row = match parsed {
            Ok(r) => r,
            // a header line
            Err(_) if k == 0 => continue,
            Err(e) => return Err(CliError::config(format!("{}: row {}: {e}", path.display(), k + 1))),
        };
        if row.len() < min || row.len() > max {
            return Err(CliError::config(format!("{}: row {} has {} columns, expected {min}..={max}", path.display(), k + 1, row.len())));
        }
        if cols.is_empty() {
            cols = vec![Vec::new(); row.len()];
        } else if row.len() != cols.len() {
            return Err(CliError::config(format!("{}: ragged row {}", path.display(), k + 1)));
        }
        for (c, v) in cols.iter_mut().zip(row) {
            c.push(v);
        }
    }
    if cols.is_empty() {
        return Err(CliError::config(format!("{}: no data rows", path.display())));
    }
    Ok(cols)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}
