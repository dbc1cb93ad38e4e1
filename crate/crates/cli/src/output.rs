use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::ser::Formatter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for the csv and text renderings.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Two-column `key, value` table.
    pub fn key_value(pairs: Vec<(&str, String)>) -> Self {
        let mut t = Table::new(&["key", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.to_string(), v]);
        }
        t
    }
}

pub trait Report: Serialize {
    fn table(&self) -> Table;
}

/// Compact JSON whose floats always carry 17 significant digits.
struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value.serialize(&mut ser).expect("report serialises");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Shortest round-trip form, switching to exponent notation for very small or large magnitudes.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !a.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn render_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("UTF-8")
}

fn render_text(t: &Table) -> String {
    let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&t.header);
    out.push('\n');
    for row in &t.rows {
        out += &line(row);
        out.push('\n');
    }
    out
}

pub fn render<R: Report>(report: &R, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = to_json(report);
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&report.table()),
        Format::Text => render_text(&report.table()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(to_json(&0.1), "1.0000000000000001e-1");
        assert_eq!(
            to_json(&vec![1.0, -2.5]),
            "[1.0000000000000000e0,-2.5000000000000000e0]"
        );
        assert_eq!(to_json(&f64::NAN), "null");
    }

    #[test]
    fn complex_is_a_pair() {
        assert_eq!(
            to_json(&Complex64::new(1.0, -0.5)),
            "[1.0000000000000000e0,-5.0000000000000000e-1]"
        );
    }

    #[test]
    fn text_is_aligned() {
        let mut t = Table::new(&["d", "value"]);
        t.push(vec!["0".into(), "1".into()]);
        t.push(vec!["10".into(), "0.25".into()]);
        assert_eq!(render_text(&t), " d  value\n 0      1\n10   0.25\n");
        assert_eq!(render_csv(&t), "d,value\n0,1\n10,0.25\n");
    }

    #[test]
    fn small_numbers_use_exponents() {
        assert_eq!(num(0.25), "0.25");
        assert_eq!(num(3.5e-20), "3.5e-20");
        assert_eq!(num(0.0), "0");
    }
}
