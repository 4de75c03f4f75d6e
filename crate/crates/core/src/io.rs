//! Text formats: rows as CSV lines or JSON arrays, dense matrices as CSV,
//! complex eigenvalues, and residual reports.
//!
//! Numbers print in the shortest decimal form that parses back to the same
//! `f64`, so every written file round-trips exactly.

use std::fmt::Write as _;

use serde::Serialize;

use crate::approximation::{ApproximationMethod, ResidualReport};
use crate::eigen::ComplexScalar;
use crate::toeplitz::DenseMatrix;
use crate::{Error, Result};

pub const REPORT_CSV_HEADER: &str =
    "method,rho,M,scaled_norm_sq_direct,scaled_norm_sq_closed,leading_term";

/// Shortest round-trip decimal; exponent notation outside `[1e-5, 1e16)`.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn format_row_csv(row: &[f64]) -> String {
    row.iter()
        .map(|&x| format_f64(x))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_f64(field: &str) -> Result<f64> {
    let t = field.trim();
    t.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Parse(format!("not a finite decimal number: '{t}'")))
}

/// One comma-separated line of decimal literals.
pub fn parse_row_csv(line: &str) -> Result<Vec<f64>> {
    let line = line.trim();
    if line.is_empty() {
        return Err(Error::Parse("empty row".into()));
    }
    line.split(',').map(parse_f64).collect()
}

pub fn format_row_json(row: &[f64]) -> String {
    serde_json::to_string(row).expect("finite floats serialize")
}

pub fn parse_row_json(text: &str) -> Result<Vec<f64>> {
    let row: Vec<f64> =
        serde_json::from_str(text.trim()).map_err(|e| Error::Parse(e.to_string()))?;
    if row.is_empty() {
        return Err(Error::Parse("empty row".into()));
    }
    Ok(row)
}

/// A row file: a JSON array if the text starts with `[`, otherwise the first
/// non-blank line as CSV.
pub fn parse_row_text(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return parse_row_json(trimmed);
    }
    let line = trimmed
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Parse("row file is empty".into()))?;
    parse_row_csv(line)
}

/// Row-major CSV, one matrix row per line, each line newline-terminated.
pub fn format_dense_csv(a: &DenseMatrix) -> String {
    let mut out = String::new();
    for row in a.rows() {
        out.push_str(&format_row_csv(row));
        out.push('\n');
    }
    out
}

pub fn parse_dense_csv(text: &str) -> Result<DenseMatrix> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_row_csv)
        .collect::<Result<Vec<_>>>()?;
    DenseMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

/// `[{"re": x, "im": y}, …]`
pub fn format_complex_json(values: &[ComplexScalar]) -> String {
    let v: Vec<ComplexJson> = values
        .iter()
        .map(|c| ComplexJson { re: c.re, im: c.im })
        .collect();
    serde_json::to_string(&v).expect("finite floats serialize")
}

/// One `re,im` line per value.
pub fn format_complex_csv(values: &[ComplexScalar]) -> String {
    let mut out = String::new();
    for c in values {
        let _ = writeln!(out, "{},{}", format_f64(c.re), format_f64(c.im));
    }
    out
}

fn opt_field(x: Option<f64>) -> String {
    x.map(format_f64).unwrap_or_default()
}

/// CSV record matching [`REPORT_CSV_HEADER`]; absent values are empty fields.
pub fn format_report_csv(r: &ResidualReport) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.method,
        opt_field(r.rho),
        r.order,
        format_f64(r.scaled_norm_sq_direct),
        opt_field(r.scaled_norm_sq_closed),
        opt_field(r.leading_term)
    )
}

pub fn parse_report_csv(line: &str) -> Result<ResidualReport> {
    let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split(',').collect();
    let [method, rho, order, direct, closed, leading] = fields[..] else {
        return Err(Error::Parse(format!(
            "expected 6 fields, found {}",
            fields.len()
        )));
    };
    let opt = |s: &str| -> Result<Option<f64>> {
        if s.trim().is_empty() {
            Ok(None)
        } else {
            parse_f64(s).map(Some)
        }
    };
    Ok(ResidualReport {
        method: method.parse::<ApproximationMethod>()?,
        rho: opt(rho)?,
        order: order
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad order '{order}'")))?,
        scaled_norm_sq_direct: parse_f64(direct)?,
        scaled_norm_sq_closed: opt(closed)?,
        leading_term: opt(leading)?,
    })
}

pub fn format_report_json(r: &ResidualReport) -> String {
    serde_json::to_string(r).expect("report serializes")
}
