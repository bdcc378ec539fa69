use std::fmt;
use std::io::{self, Write};

/// Malformed command-line input that clap cannot catch on its own.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Shortest round-tripping digits, switching to exponent form outside
/// [1e-4, 1e15). Rust formatting never depends on the locale.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Minimal CSV writer for numeric tables.
pub struct Csv<'a> {
    out: &'a mut dyn Write,
    columns: usize,
}

impl<'a> Csv<'a> {
    pub fn new(out: &'a mut dyn Write, header: &[&str]) -> io::Result<Self> {
        writeln!(out, "{}", header.join(","))?;
        Ok(Self { out, columns: header.len() })
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        debug_assert_eq!(values.len(), self.columns);
        let cells: Vec<String> = values.iter().map(|&v| format_number(v)).collect();
        writeln!(self.out, "{}", cells.join(","))
    }
}
