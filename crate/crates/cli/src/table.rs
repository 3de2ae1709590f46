//! Deterministic table model with CSV and JSON renderers.
//!
//! CSV: `#`-prefixed metadata lines (command, version, config echo), a header
//! row, then data rows. Floats print in Rust's shortest round-trip form, so
//! parsing a cell back recovers the exact f64 and reruns diff clean. JSON is
//! one object `{"config", "rows", "checks"}` with the same values. Text cells
//! must stay free of commas and newlines; parameter strings use `;`.

use crate::config::RunConfig;
use serde_json::{json, Map, Value};
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Text(String),
    Missing,
}

impl Cell {
    /// Negative zero prints as "-0"; fold it to plain zero.
    fn norm(v: f64) -> f64 {
        if v == 0.0 {
            0.0
        } else {
            v
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format!("{}", Self::norm(*v)),
            Cell::Text(s) => {
                debug_assert!(
                    !s.contains(',') && !s.contains('\n'),
                    "text cells must not need CSV quoting: {s:?}"
                );
                s.clone()
            }
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => serde_json::Number::from_f64(Self::norm(*v))
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Text(s) => json!(s),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Informational,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Informational => "informational",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub params: String,
    pub max_deviation: Option<f64>,
    pub status: CheckStatus,
    pub note: String,
}

impl CheckRow {
    /// Pass/fail against a tolerance.
    pub fn gated(name: &str, params: &str, deviation: f64, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            params: params.to_string(),
            max_deviation: Some(deviation),
            status: if deviation <= tol {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            note: format!("tolerance {tol}"),
        }
    }

    pub fn informational(name: &str, params: &str, deviation: f64, note: &str) -> Self {
        Self {
            name: name.to_string(),
            params: params.to_string(),
            max_deviation: Some(deviation),
            status: CheckStatus::Informational,
            note: note.to_string(),
        }
    }

    pub fn skipped(name: &str, params: &str, note: &str) -> Self {
        Self {
            name: name.to_string(),
            params: params.to_string(),
            max_deviation: None,
            status: CheckStatus::Skipped,
            note: note.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub config: RunConfig,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub checks: Vec<CheckRow>,
}

impl Table {
    pub fn new(config: RunConfig, columns: &[&str]) -> Self {
        Self {
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn render(&self, w: &mut impl Write) -> std::io::Result<()> {
        match self.config.output {
            crate::config::OutputFormat::Csv => self.render_csv(w),
            crate::config::OutputFormat::Json => self.render_json(w),
        }
    }

    fn render_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "# command = {}", self.config.command)?;
        writeln!(w, "# version = {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# config = {}", self.config.echo())?;
        if !self.rows.is_empty() {
            writeln!(w, "{}", self.columns.join(","))?;
            for row in &self.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(w, "{}", cells.join(","))?;
            }
        }
        if !self.checks.is_empty() {
            writeln!(w, "check,params,max_deviation,status,note")?;
            for c in &self.checks {
                let dev = c
                    .max_deviation
                    .map(|d| format!("{d}"))
                    .unwrap_or_default();
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    c.name,
                    c.params,
                    dev,
                    c.status.as_str(),
                    c.note
                )?;
            }
        }
        Ok(())
    }

    fn render_json(&self, w: &mut impl Write) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert(col.clone(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "check": c.name,
                    "params": c.params,
                    "max_deviation": c.max_deviation,
                    "status": c.status.as_str(),
                    "note": c.note,
                })
            })
            .collect();
        let doc = json!({
            "config": serde_json::to_value(&self.config).expect("config serializes"),
            "rows": rows,
            "checks": checks,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{OutputFormat, RunConfig};

    fn demo_table(output: OutputFormat) -> Table {
        let mut cfg = RunConfig::new("demo");
        cfg.output = output;
        let mut t = Table::new(cfg, &["x", "y", "tag"]);
        t.push_row(vec![
            Cell::Float(0.1),
            Cell::Float(1.0 / 3.0),
            Cell::Text("ok".into()),
        ]);
        t.push_row(vec![Cell::Float(0.2), Cell::Missing, Cell::Text("bad".into())]);
        t.checks
            .push(CheckRow::gated("demo_check", "a=1;b=2", 1e-15, 1e-12));
        t
    }

    #[test]
    fn csv_round_trips_floats_exactly() {
        let t = demo_table(OutputFormat::Csv);
        let mut buf = Vec::new();
        t.render(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let data_line = text
            .lines()
            .find(|l| l.starts_with("0.1,"))
            .expect("data row present");
        let y: f64 = data_line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(y, 1.0 / 3.0, "shortest form must parse back exactly");
    }

    #[test]
    fn json_and_csv_carry_equal_values() {
        let tc = demo_table(OutputFormat::Csv);
        let tj = demo_table(OutputFormat::Json);
        let mut jbuf = Vec::new();
        tj.render(&mut jbuf).unwrap();
        let doc: Value = serde_json::from_slice(&jbuf).unwrap();
        assert_eq!(doc["rows"][0]["y"].as_f64().unwrap(), 1.0 / 3.0);
        assert!(doc["rows"][1]["y"].is_null());
        assert_eq!(doc["checks"][0]["status"], "pass");
        let mut cbuf = Vec::new();
        tc.render(&mut cbuf).unwrap();
        assert!(String::from_utf8(cbuf).unwrap().contains("demo_check"));
    }

    #[test]
    fn fail_status_detected() {
        let mut t = demo_table(OutputFormat::Csv);
        assert!(!t.any_fail());
        t.checks
            .push(CheckRow::gated("bad", "", 1.0, 1e-12));
        assert!(t.any_fail());
    }
}
