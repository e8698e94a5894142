//! Rendering of command reports as JSON, CSV or plain text.

use serde_json::{json, Value};

use crate::config::{Format, Resolved};
use crate::CliError;

/// What a command produced: the structured result plus a flat table.
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub pass: bool,
}

pub fn render(report: &Report, cfg: &Resolved) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "command": report.command,
                "config": cfg.echo(),
                "seed": cfg.seed,
                "pass": report.pass,
                "result": report.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Failure(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Failure(e.to_string());
            w.write_record(&report.columns).map_err(io)?;
            for row in &report.rows {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
        }
        Format::Text => Ok(text_table(report, cfg)),
    }
}

fn text_table(report: &Report, cfg: &Resolved) -> String {
    let mut widths: Vec<usize> = report.columns.iter().map(|c| c.chars().count()).collect();
    for row in &report.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (cell, w) in cells.zip(&widths) {
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', w + 2 - cell.chars().count()));
        }
        s.trim_end().to_string()
    };
    let mut out = format!("# {} on {} (seed {})\n", report.command, cfg.spec.label(), cfg.seed);
    out.push_str(&line(&mut report.columns.iter().copied()));
    out.push('\n');
    for row in &report.rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
        out.push('\n');
    }
    out.push_str(if report.pass { "result: pass\n" } else { "result: FAIL\n" });
    out
}

/// Floats rounded to nine decimals, with `-0` folded into `0`.
pub fn round9(x: f64) -> f64 {
    let y = (x * 1e9).round() / 1e9;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{}", round9(x))
}

pub fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}
