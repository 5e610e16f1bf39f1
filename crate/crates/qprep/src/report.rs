//! Report serialization.
//!
//! JSON output is one object per cell with the full nested report. CSV
//! output flattens `config` and `gate_counts` into `key=value;…` strings.
//! JSON Lines (`.jsonl`) carries one JSON object per line and, like CSV, can
//! be appended to by a resumed sweep.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use qprep_core::analysis::BoundReport;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    JsonLines,
    Csv,
}

impl ReportFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Self::Csv,
            Some("jsonl") => Self::JsonLines,
            _ => Self::Json,
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatRow {
    pub config: String,
    pub measured_distance: f64,
    pub theoretical_bound: f64,
    pub measured_success_probability: Option<f64>,
    pub success_lower_bound: Option<f64>,
    pub gate_counts: String,
    pub satisfied: bool,
    pub seed: Option<u64>,
}

impl From<&BoundReport> for FlatRow {
    fn from(r: &BoundReport) -> Self {
        Self {
            config: r.config.to_string(),
            measured_distance: r.measured_distance,
            theoretical_bound: r.theoretical_bound,
            measured_success_probability: r.measured_success_probability,
            success_lower_bound: r.success_lower_bound,
            gate_counts: r.gate_counts.to_string(),
            satisfied: r.satisfied,
            seed: r.seed,
        }
    }
}

pub fn to_json(reports: &[BoundReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn to_csv(reports: &[BoundReport]) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    write_csv_header(&mut w);
    for r in reports {
        w.serialize(FlatRow::from(r)).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

fn write_csv_header<W: Write>(w: &mut csv::Writer<W>) {
    w.write_record([
        "config",
        "measured_distance",
        "theoretical_bound",
        "measured_success_probability",
        "success_lower_bound",
        "gate_counts",
        "satisfied",
        "seed",
    ])
    .expect("header writes");
}

pub fn render(reports: &[BoundReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(reports),
        ReportFormat::Csv => to_csv(reports),
        ReportFormat::JsonLines => reports
            .iter()
            .map(|r| serde_json::to_string(r).expect("reports serialize") + "\n")
            .collect(),
    }
}

pub fn write_reports(path: &Path, reports: &[BoundReport]) -> Result<()> {
    std::fs::write(path, render(reports, ReportFormat::from_path(path)))
        .with_context(|| format!("writing {}", path.display()))
}

/// Append-only report stream. Reopening an existing CSV or JSON Lines file
/// reports how many cells it already holds so a sweep can skip them.
pub struct ReportSink {
    path: PathBuf,
    format: ReportFormat,
    file: File,
    written: usize,
}

impl ReportSink {
    /// Opens `path` for appending, creating it if needed. Plain JSON cannot
    /// be appended to and is rejected.
    pub fn open(path: &Path) -> Result<Self> {
        let format = ReportFormat::from_path(path);
        if format == ReportFormat::Json {
            bail!(
                "{}: resumable output needs a .csv or .jsonl path",
                path.display()
            );
        }
        let existing = if path.exists() {
            let lines = BufReader::new(File::open(path)?)
                .lines()
                .collect::<std::io::Result<Vec<_>>>()?;
            let complete = lines.iter().filter(|l| !l.trim().is_empty()).count();
            match format {
                ReportFormat::Csv => complete.saturating_sub(1),
                _ => complete,
            }
        } else {
            0
        };
        let fresh = !path.exists() || std::fs::metadata(path)?.len() == 0;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening {}", path.display()))?;
        if fresh && format == ReportFormat::Csv {
            let mut w = csv::Writer::from_writer(&mut file);
            write_csv_header(&mut w);
            w.flush()?;
        }
        Ok(Self {
            path: path.to_path_buf(),
            format,
            file,
            written: existing,
        })
    }

    /// Number of cells already in the file.
    pub fn written(&self) -> usize {
        self.written
    }

    pub fn append(&mut self, reports: &[BoundReport]) -> Result<()> {
        let text = match self.format {
            ReportFormat::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(Vec::new());
                for r in reports {
                    w.serialize(FlatRow::from(r))?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            _ => render(reports, self.format),
        };
        self.file
            .write_all(text.as_bytes())
            .and_then(|_| self.file.flush())
            .with_context(|| format!("appending to {}", self.path.display()))?;
        self.written += reports.len();
        Ok(())
    }
}
