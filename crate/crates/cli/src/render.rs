use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

/// C-style `%.12e`: twelve fractional digits, signed exponent of at least
/// two digits.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Pretty JSON with sorted object keys and a trailing newline, so parsing
/// and re-emitting reproduces the same bytes.
pub fn json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable output");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable output");
    s.push('\n');
    s
}

/// Right-aligned columns separated by two spaces.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&width).map(|(c, &w)| format!("{c:>w$}")).collect();
        writeln!(out, "{}", parts.join("  ").trim_end()).expect("write to string");
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_format() {
        assert_eq!(sci(3.0), "3.000000000000e+00");
        assert_eq!(sci(0.0), "0.000000000000e+00");
        assert_eq!(sci(-1.5e-10), "-1.500000000000e-10");
        assert_eq!(sci(1.234e120), "1.234000000000e+120");
    }

    #[test]
    fn aligned_columns() {
        let out = columns(&["n", "value"], &[vec!["-2".into(), "0".into()], vec!["10".into(), "144".into()]]);
        assert_eq!(out, " n  value\n-2      0\n10    144\n");
    }
}
