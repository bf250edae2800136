use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

use dirac2d::verify::{Summary, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A row that can be written as CSV and as an aligned text table.
pub trait TableRow: Serialize {
    const COLUMNS: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
    fn passed(&self) -> bool;
}

pub fn real(v: f64) -> String {
    format!("{v}")
}

pub fn opt_real(v: Option<f64>) -> String {
    v.map(real).unwrap_or_default()
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema_version: u32,
    command: &'a str,
    rows: &'a [T],
    summary: Summary,
}

pub fn summarize<T: TableRow>(rows: &[T]) -> Summary {
    let passed = rows.iter().filter(|r| r.passed()).count();
    Summary {
        total: rows.len(),
        passed,
        failed: rows.len() - passed,
    }
}

/// Writes the rows in `format` and returns their summary.
pub fn emit<T: TableRow>(
    out: &mut impl Write,
    format: Format,
    command: &str,
    rows: &[T],
) -> io::Result<Summary> {
    let summary = summarize(rows);
    match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command,
                rows,
                summary,
            };
            serde_json::to_writer_pretty(&mut *out, &env)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["schema_version"];
            header.extend_from_slice(T::COLUMNS);
            w.write_record(&header)?;
            for row in rows {
                let mut rec = vec![SCHEMA_VERSION.to_string()];
                rec.extend(row.fields());
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "# {command}")?;
            write_table(out, T::COLUMNS, rows.iter().map(TableRow::fields).collect())?;
            writeln!(
                out,
                "{} rows: {} passed, {} failed",
                summary.total, summary.passed, summary.failed
            )?;
        }
    }
    Ok(summary)
}

fn write_table(out: &mut impl Write, columns: &[&str], rows: Vec<Vec<String>>) -> io::Result<()> {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for row in &rows {
        for (w, f) in widths.iter_mut().zip(row) {
            *w = (*w).max(f.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(columns.to_vec()))?;
    for row in &rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
