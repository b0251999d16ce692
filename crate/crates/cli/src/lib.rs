//! Command-line front end for `symspace-core`: verification suites,
//! tables and decompositions with JSON or CSV reports.

// NaN must fail the `!(x > 0.0)` guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

pub use config::RunConfig;
pub use error::{CliError, CliResult};

/// Runs one subcommand, writes its report and returns the exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let started = Instant::now();
    let outcome = commands::dispatch(cfg).and_then(|report| {
        let wall = started.elapsed();
        match &cfg.common.out {
            Some(path) => {
                let file = File::create(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
                let mut w = BufWriter::new(file);
                report.write(cfg, wall, &mut w)?;
                w.flush()?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                report.write(cfg, wall, &mut lock)?;
            }
        }
        Ok(report)
    });
    match outcome {
        Ok(report) if report.passed() => 0,
        Ok(report) => {
            error_body("check_failed", &format!("{} check(s) out of tolerance", report.failures().len()), Some(report.failures()));
            1
        }
        Err(e) => {
            error_body(e.kind(), &e.to_string(), None);
            e.exit_code()
        }
    }
}

pub fn error_body(kind: &str, message: &str, failed: Option<Vec<&str>>) {
    let mut body = serde_json::json!({ "error": kind, "message": message });
    if let Some(f) = failed {
        body["failed"] = serde_json::json!(f);
    }
    eprintln!("{body}");
}
