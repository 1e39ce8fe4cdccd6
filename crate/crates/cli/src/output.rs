//! Output plumbing: formats, emission, and small rendering helpers.

use cherednik_core::{Error, Result};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Canonical machine-readable output.
    Json,
    /// Matrix entries only (form command, single degree).
    Csv,
    /// Human-readable text; lossy, never parsed back.
    Table,
}

/// Write `text` (plus a trailing newline) to stdout or a file.  A closed
/// stdout (e.g. piping into `head`) ends the process quietly.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    use std::io::Write;
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = writeln!(stdout, "{text}").and_then(|_| stdout.flush()) {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    std::process::exit(0);
                }
                return Err(Error::Config(format!("cannot write to stdout: {e}")));
            }
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
    }
}

pub fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
}

pub fn pretty_report<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
}

/// Align a rectangular grid of strings into padded columns.
pub fn align_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, cell)| format!("{:<width$}", cell, width = widths[j]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// A CSV cell: quote only when necessary.
pub fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| csv_cell(c))
        .collect::<Vec<_>>()
        .join(",")
}
