use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, Trim};

use super::CliError;
use crate::fit::BenchmarkSeries;

/// Reads a benchmark CSV: header `p,<column>`, comma-separated, `#` comments,
/// decimal points only. Every row must have as many fields as the header.
pub fn read_series(path: &Path, column: &str) -> Result<BenchmarkSeries, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::input(format!("cannot open {}: {e}", path.display())))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_series(file, column, &label)
}

pub fn parse_series<R: Read>(
    reader: R,
    column: &str,
    label: &str,
) -> Result<BenchmarkSeries, CliError> {
    let mut rdr = ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(Trim::All)
        .has_headers(true)
        .from_reader(reader);

    let expected = format!("p,{column}");
    let headers = rdr
        .headers()
        .map_err(|e| CliError::input(format!("unreadable header (expected `{expected}`): {e}")))?
        .clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(CliError::input(format!("missing header `{expected}`")));
    }
    if headers.get(0) != Some("p") {
        return Err(CliError::input(format!(
            "first column must be `p` (expected header `{expected}`, found `{}`)",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let value_index = headers.iter().position(|h| h == column).ok_or_else(|| {
        CliError::input(format!(
            "no `{column}` column (expected header `{expected}`, found `{}`)",
            headers.iter().collect::<Vec<_>>().join(",")
        ))
    })?;

    let mut points = Vec::new();
    let mut bad_lines = Vec::new();
    let mut first_line: BTreeMap<u32, u64> = BTreeMap::new();
    let mut duplicates = Vec::new();
    for record in rdr.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                bad_lines.push(e.position().map_or(0, |pos| pos.line()));
                continue;
            }
        };
        let line = record.position().map_or(0, |pos| pos.line());
        let p = record
            .get(0)
            .and_then(|s| s.parse::<u32>().ok())
            .filter(|&p| p >= 1);
        let x = record
            .get(value_index)
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|x| x.is_finite() && *x > 0.0);
        match (p, x) {
            (Some(p), Some(x)) => {
                if let Some(&earlier) = first_line.get(&p) {
                    duplicates.push(format!("p={p} at lines {earlier} and {line}"));
                } else {
                    first_line.insert(p, line);
                    points.push((p, x));
                }
            }
            _ => bad_lines.push(line),
        }
    }

    if !bad_lines.is_empty() {
        let lines: Vec<String> = bad_lines.iter().map(u64::to_string).collect();
        return Err(CliError::input(format!(
            "malformed rows at line(s) {}: expected a positive integer p and a positive `{column}`",
            lines.join(", ")
        )));
    }
    if !duplicates.is_empty() {
        return Err(CliError::input(format!(
            "duplicate processor counts: {}",
            duplicates.join("; ")
        )));
    }
    if points.is_empty() {
        return Err(CliError::input(format!(
            "no data rows below header `{expected}`"
        )));
    }
    Ok(BenchmarkSeries::labeled(points, label, "")?)
}
