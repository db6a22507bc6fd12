//! Batch file format: CSV with a required header and an `x` column;
//! optional `a`, `b` (default 1.0), `group` (default 0) and `theta` (0/1)
//! columns. UTF-8 with `.` as the decimal separator.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::HypothesisBatch;

fn parse_f64(field: &str, column: &str, record: usize) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| {
        Error::BatchFormat(format!(
            "row {record}: cannot parse '{field}' in column '{column}' as a number"
        ))
    })
}

/// Reads a batch from CSV.
pub fn read_batch<R: Read>(reader: R) -> Result<HypothesisBatch> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv_reader.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
    };
    let x_col = find("x").ok_or_else(|| {
        Error::BatchFormat("missing required column 'x' (is the header row present?)".into())
    })?;
    let a_col = find("a");
    let b_col = find("b");
    let group_col = find("group");
    let theta_col = find("theta");

    let mut x = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut group = Vec::new();
    let mut theta = Vec::new();
    for (row, record) in csv_reader.records().enumerate() {
        let record = record?;
        let get = |col: Option<usize>| col.and_then(|c| record.get(c));
        x.push(parse_f64(
            record.get(x_col).unwrap_or_default(),
            "x",
            row + 1,
        )?);
        a.push(match get(a_col) {
            Some(field) if !field.is_empty() => parse_f64(field, "a", row + 1)?,
            _ => 1.0,
        });
        b.push(match get(b_col) {
            Some(field) if !field.is_empty() => parse_f64(field, "b", row + 1)?,
            _ => 1.0,
        });
        group.push(match get(group_col) {
            Some(field) if !field.is_empty() => field.parse::<usize>().map_err(|_| {
                Error::BatchFormat(format!(
                    "row {}: group must be a non-negative integer, got '{field}'",
                    row + 1
                ))
            })?,
            _ => 0,
        });
        if theta_col.is_some() {
            let field = get(theta_col).unwrap_or_default();
            theta.push(match field {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::BatchFormat(format!(
                        "row {}: theta must be 0 or 1, got '{other}'",
                        row + 1
                    )))
                }
            });
        }
    }
    let theta = if theta_col.is_some() { Some(theta) } else { None };
    HypothesisBatch::new(x, a, b, group, theta)
        .map_err(|e| Error::BatchFormat(e.to_string()))
}

/// Reads a batch from a CSV file on disk.
pub fn read_batch_file<P: AsRef<Path>>(path: P) -> Result<HypothesisBatch> {
    let file = std::fs::File::open(path)?;
    read_batch(file)
}
