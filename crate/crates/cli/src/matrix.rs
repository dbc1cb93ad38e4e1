//! Reading the matrix `F` from JSON or CSV.
//!
//! JSON: `{"n": N, "rows": [[[re, im], ...], ...]}`.
//! CSV: no header; each row has either `N` real entries or `2N` entries
//! `re, im, re, im, ...`.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

#[derive(Deserialize)]
struct MatrixFile {
    n: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

pub fn parse_json(text: &str) -> Result<DMatrix<Complex64>, String> {
    let m: MatrixFile =
        serde_json::from_str(text).map_err(|e| format!("invalid matrix JSON: {e}"))?;
    if m.rows.len() != m.n || m.rows.iter().any(|r| r.len() != m.n) {
        return Err(format!(
            "matrix JSON declares n = {} but rows are not {0}x{0}",
            m.n
        ));
    }
    Ok(DMatrix::from_fn(m.n, m.n, |i, j| {
        let [re, im] = m.rows[i][j];
        Complex64::new(re, im)
    }))
}

pub fn parse_csv(text: &str) -> Result<DMatrix<Complex64>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("invalid matrix CSV: {e}"))?;
        let row = record
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| format!("row {}: {s:?}: {e}", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err("matrix CSV is empty".into());
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err("matrix CSV rows have different lengths".into());
    }
    if width == n {
        Ok(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(rows[i][j], 0.0)
        }))
    } else if width == 2 * n {
        Ok(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(rows[i][2 * j], rows[i][2 * j + 1])
        }))
    } else {
        Err(format!(
            "matrix CSV has {n} rows of {width} entries; expected {n} or {}",
            2 * n
        ))
    }
}

pub fn read(path: &Path) -> Result<DMatrix<Complex64>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => parse_json(&text),
        Some("csv") => parse_csv(&text),
        _ if text.trim_start().starts_with('{') => parse_json(&text),
        _ => parse_csv(&text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let m = parse_json(r#"{"n": 2, "rows": [[[1, 0], [0, 2]], [[0, 0], [3, -1]]]}"#).unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 2.0));
        assert_eq!(m[(1, 1)], Complex64::new(3.0, -1.0));
        assert!(parse_json(r#"{"n": 3, "rows": [[[1, 0]]]}"#).is_err());
    }

    #[test]
    fn csv_real_and_complex() {
        let m = parse_csv("1, 2\n3, 4\n").unwrap();
        assert_eq!(m[(1, 0)], Complex64::new(3.0, 0.0));
        let m = parse_csv("1,0,0,1\n0,-1,2,0\n").unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 1.0));
        assert_eq!(m[(1, 0)], Complex64::new(0.0, -1.0));
        assert!(parse_csv("1,2,3\n4,5,6\n").is_err());
        assert!(parse_csv("1,x\n3,4\n").is_err());
    }
}
