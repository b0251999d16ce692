use std::io::Write;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Map, Value};
use symspace_core::math::C64;

use crate::config::{Format, RunConfig};
use crate::error::CliResult;

/// A dense numeric table, written as CSV or embedded in the JSON report.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
    pub table: Option<Table>,
}

impl Report {
    /// Records `value ≤ bound`; NaN fails.
    pub fn check(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        self.checks.push(Check { name: name.into(), value, bound, passed: value <= bound });
    }

    pub fn check_flag(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), value: if ok { 0.0 } else { 1.0 }, bound: 0.0, passed: ok });
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    /// Report body without the table.
    pub fn to_json(&self, cfg: &RunConfig, wall: Duration) -> Value {
        let residuals: Map<String, Value> = self
            .checks
            .iter()
            .map(|c| (c.name.clone(), json!({ "value": num(c.value), "bound": num(c.bound), "passed": c.passed })))
            .collect();
        json!({
            "command": cfg.command.name(),
            "config": cfg,
            "seed": cfg.seed(),
            "passed": self.passed(),
            "residuals": residuals,
            "results": self.results,
            "wall_time_s": wall.as_secs_f64(),
        })
    }

    pub fn write(&self, cfg: &RunConfig, wall: Duration, out: &mut dyn Write) -> CliResult<()> {
        let mut body = self.to_json(cfg, wall);
        match cfg.common.format {
            Format::Json => {
                if let Some(t) = &self.table {
                    body["table"] = serde_json::to_value(t)?;
                }
                serde_json::to_writer_pretty(&mut *out, &body)?;
                writeln!(out)?;
            }
            Format::Csv => {
                // the report rides along as a comment line
                writeln!(out, "# {}", serde_json::to_string(&body)?)?;
                let mut w = csv::Writer::from_writer(&mut *out);
                match &self.table {
                    Some(table) => {
                        w.write_record(&table.columns)?;
                        for row in &table.rows {
                            w.write_record(row.iter().map(|v| fmt_f64(*v)))?;
                        }
                    }
                    None => {
                        w.write_record(["name", "value", "bound", "passed"])?;
                        for c in &self.checks {
                            w.write_record([c.name.clone(), fmt_f64(c.value), fmt_f64(c.bound), c.passed.to_string()])?;
                        }
                    }
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or_else(|| Value::String(fmt_f64(v)))
}

pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:?}")
    } else {
        format!("{v}")
    }
}

pub fn complex(z: C64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn matrix_rows(m: &symspace_core::linalg::Matrix) -> Value {
    json!(m.to_rows())
}
