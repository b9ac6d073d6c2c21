use std::fmt::Write as _;
use std::path::Path;

use super::{Format, Report};
use crate::error::{Error, Result};

/// CSV layout: one line per scalar, table cell and verdict.
/// `kind` is `scalar`, `row` or `verdict`; `index` is the row number for
/// table cells and the position for verdicts; verdict values are 1 (pass)
/// or 0 (fail).
pub const CSV_HEADER: &str = "kind,index,name,value,tolerance";

/// 17 significant digits, locale independent.
fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn quoted(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for (name, value) in &report.scalars {
                let _ = writeln!(out, "scalar,,{},{},", quoted(name), number(*value));
            }
            for (i, row) in report.rows.iter().enumerate() {
                for (name, value) in report.columns.iter().zip(row) {
                    let _ = writeln!(out, "row,{i},{},{},", quoted(name), number(*value));
                }
            }
            for (i, v) in report.verdicts.iter().enumerate() {
                let pass = if v.pass { "1" } else { "0" };
                let _ = writeln!(out, "verdict,{i},{},{pass},{}", quoted(&v.claim), number(v.tolerance));
            }
            out
        }
    }
}

/// Writes the rendered report to `path`.
pub fn emit(report: &Report, format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, render(report, format)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
