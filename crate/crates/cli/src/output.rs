//! CSV tables. Numbers go out bare; text and complex values are quoted.

use std::io::Write;
use std::path::Path;

use askey_core::polyfamilies::is_effectively_real;
use askey_core::scalar::format_f64;
use askey_core::{Precision, Scalar};
use csv::{QuoteStyle, WriterBuilder};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Significant digits printed for a working precision.
pub fn output_digits(precision: Precision) -> usize {
    precision.digits() as usize
}

pub fn real(v: f64, precision: Precision) -> String {
    format_f64(v, output_digits(precision).min(17))
}

/// Real values print as one number; otherwise `re+imi`.
pub fn scalar<T: Scalar>(v: &T) -> String {
    let digits = output_digits(v.precision());
    let (re, im) = v.to_decimal_parts(digits);
    if im == "0" || is_effectively_real(v, 0.0) {
        return re;
    }
    let sep = if im.starts_with('-') { "" } else { "+" };
    format!("{re}{sep}{im}i")
}

/// Header line, then one line per row, each ending in `\n`.
pub fn render_csv(table: &Table) -> Vec<u8> {
    let mut out = Vec::new();
    {
        let mut header = WriterBuilder::new().quote_style(QuoteStyle::Necessary).from_writer(&mut out);
        header.write_record(&table.header).expect("in-memory write");
        header.flush().expect("in-memory write");
    }
    let mut rows = WriterBuilder::new().quote_style(QuoteStyle::NonNumeric).from_writer(&mut out);
    for row in &table.rows {
        rows.write_record(row).expect("in-memory write");
    }
    rows.flush().expect("in-memory write");
    drop(rows);
    out
}

/// Write the table to `path`, or to standard output.
pub fn emit_csv(table: &Table, path: Option<&Path>) -> std::io::Result<()> {
    let bytes = render_csv(table);
    match path {
        Some(path) => std::fs::write(path, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()
        }
    }
}
