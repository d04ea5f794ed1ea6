//! Text, CSV and JSON rendering helpers. Everything here is deterministic:
//! floats use Rust's shortest round-trip formatting, rationals print as `p/q`.

use serde_json::Value;
use youngspec::exact::format_ratio;
use youngspec::BigRational;

pub const SCHEMA: u64 = 1;

pub fn ratio(q: &BigRational) -> Value {
    Value::String(format_ratio(q))
}

/// Finite floats as JSON numbers, infinities and NaN as `null`.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn json(value: &Value) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Left-aligned columns separated by two spaces, with a header row.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut text = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                text.push_str(cell);
            } else {
                text.push_str(&format!("{cell:<w$}  "));
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

/// Compact human-readable float for tables.
pub fn number(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.4e}")
    }
}

pub fn residual(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = table(&["a", "long"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    long\nxyz  1\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let c = csv(&["shape", "f"], &[vec!["2,1".into(), "2".into()]]).unwrap();
        assert_eq!(c, "shape,f\n\"2,1\",2\n");
    }

    #[test]
    fn compact_numbers() {
        assert_eq!(number(0.0), "0.000000");
        assert_eq!(number(2.5), "2.500000");
        assert_eq!(number(-7.9e-18), "-7.9000e-18");
    }

    #[test]
    fn non_finite_floats_are_null() {
        assert_eq!(float(f64::INFINITY), Value::Null);
        assert_eq!(float(0.5).to_string(), "0.5");
    }
}
