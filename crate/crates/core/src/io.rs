//! Text formats: complex literals, numeric CSV tables and the structured
//! output record.
//!
//! Complex literals are `a`, `bi`, `a+bi` or `a-bi` with no spaces, where
//! `a` and `b` are decimal floats (exponents allowed) and a bare `i` means
//! unit imaginary part.
//!
//! CSV tables are UTF-8, comma separated, LF terminated, with a header row
//! and numeric fields only. Floats are written with 17 significant digits;
//! `nan` marks a value that could not be computed.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Diagnostic, Error, Result};

/// Version tag of [`OutputRecord`].
pub const SCHEMA_VERSION: &str = "1";

fn parse_real(text: &str, whole: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("bad number {text:?} in complex literal {whole:?}"));
    // Rust's float grammar also takes "inf"/"nan"; only digits are allowed here.
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
        return Err(bad());
    }
    let v: f64 = text.parse().map_err(|_| bad())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn parse_imag(text: &str, whole: &str) -> Result<f64> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(text, whole),
    }
}

/// Parses a complex literal such as `2`, `0.5-3i`, `-i` or `1e-3+2e1i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    if text.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let Some(body) = text.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(text, text)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(
            parse_real(&body[..k], text)?,
            parse_imag(&body[k..], text)?,
        )),
        None => Ok(Complex64::new(0.0, parse_imag(body, text)?)),
    }
}

/// Formats `z` so that [`parse_complex`] returns it exactly.
pub fn format_complex(z: Complex64) -> String {
    let im = if z.im.is_sign_negative() {
        format!("-{}", -z.im)
    } else {
        format!("+{}", z.im)
    };
    format!("{}{im}i", z.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Integer,
    Float,
}

/// Column layout of a CSV table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableSchema {
    pub name: &'static str,
    pub columns: &'static [(&'static str, ColumnKind)],
}

use ColumnKind::{Float, Integer};

/// Rows of `fracsum scan --csv`.
pub const SCAN_SCHEMA: TableSchema = TableSchema {
    name: "scan",
    columns: &[
        ("s_re", Float),
        ("s_im", Float),
        ("abs_zeta", Float),
        ("analytic_residual", Float),
        ("lambda_re", Float),
        ("lambda_im", Float),
        ("lambda_is_real", Integer),
        ("flags", Integer),
    ],
};

/// Rows of `fracsum zeros --csv`.
pub const ZEROS_SCHEMA: TableSchema = TableSchema {
    name: "zeros",
    columns: &[
        ("index", Integer),
        ("t", Float),
        ("residual", Float),
        ("bracket_lo", Float),
        ("bracket_hi", Float),
        ("lambda_re", Float),
        ("lambda_im", Float),
        ("analytic_residual", Float),
        ("f0_abs", Float),
        ("fhalf_abs", Float),
        ("lambda_is_real", Integer),
    ],
};

/// A numeric table conforming to a [`TableSchema`].
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub schema: TableSchema,
    pub rows: Vec<Vec<f64>>,
}

fn format_cell(v: f64, kind: ColumnKind) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    match kind {
        Integer => format!("{}", v as i64),
        Float => format!("{v:.16e}"),
    }
}

fn parse_cell(text: &str, kind: ColumnKind, row: usize, col: &str) -> Result<f64> {
    let bad = |why: &str| Error::Parse(format!("row {row}, column {col}: {why} ({text:?})"));
    match kind {
        Integer => text
            .parse::<i64>()
            .map(|v| v as f64)
            .map_err(|_| bad("expected an integer")),
        Float => match text {
            "nan" => Ok(f64::NAN),
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            _ => parse_real(text, text).map_err(|_| bad("expected a float")),
        },
    }
}

impl CsvTable {
    pub fn new(schema: TableSchema) -> Self {
        Self {
            schema,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.schema.columns.len() {
            return Err(Error::Domain(format!(
                "{} row has {} fields, expected {}",
                self.schema.name,
                row.len(),
                self.schema.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let io_err = |e: csv::Error| Error::Parse(format!("csv write: {e}"));
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .quote_style(csv::QuoteStyle::Never)
            .from_writer(out);
        w.write_record(self.schema.columns.iter().map(|c| c.0)).map_err(io_err)?;
        for row in &self.rows {
            let cells = row
                .iter()
                .zip(self.schema.columns)
                .map(|(&v, &(_, kind))| format_cell(v, kind));
            w.write_record(cells).map_err(io_err)?;
        }
        w.flush().map_err(|e| Error::Parse(format!("csv write: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Parses and validates a table against `schema`.
    pub fn parse(text: &str, schema: TableSchema) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .quoting(false)
            .flexible(false)
            .from_reader(text.as_bytes());
        let header = reader
            .headers()
            .map_err(|e| Error::Parse(format!("csv header: {e}")))?;
        let names: Vec<&str> = header.iter().collect();
        let expected: Vec<&str> = schema.columns.iter().map(|c| c.0).collect();
        if names != expected {
            return Err(Error::Parse(format!(
                "{} header {names:?} does not match {expected:?}",
                schema.name
            )));
        }
        let mut table = Self::new(schema);
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(format!("csv row {}: {e}", i + 1)))?;
            let row = record
                .iter()
                .zip(schema.columns)
                .map(|(cell, &(name, kind))| parse_cell(cell, kind, i + 1, name))
                .collect::<Result<Vec<f64>>>()?;
            table.push(row)?;
        }
        Ok(table)
    }
}

/// One self-describing record per CLI invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub results: serde_json::Value,
    pub diagnostics: Vec<Diagnostic>,
    pub timing_ms: f64,
}

impl OutputRecord {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs: BTreeMap::new(),
            results: serde_json::Value::Null,
            diagnostics: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record is serializable")
    }

    /// Parses a record and checks its schema version.
    pub fn from_json(text: &str) -> Result<Self> {
        let record: Self =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("record: {e}")))?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {:?}",
                record.schema_version
            )));
        }
        if !record.timing_ms.is_finite() || record.timing_ms < 0.0 {
            return Err(Error::Parse("timing_ms must be a non-negative number".into()));
        }
        Ok(record)
    }

    /// JSON with the timing field zeroed, for reproducibility comparisons.
    pub fn canonical_json(&self) -> String {
        Self {
            timing_ms: 0.0,
            ..self.clone()
        }
        .to_json()
    }
}
