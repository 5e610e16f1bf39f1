//! Target-vector and phase-table files.
//!
//! Vectors are JSON `{"n": 2, "entries": [{"magnitude": 1.0, "phase": 0.0}, …]}`
//! or CSV with the header `index,magnitude,phase`. Phase tables are JSON
//! `{"phases": […]}` (or a bare array) or CSV with the header `index,phase`.
//! The format is picked from the file extension, falling back to sniffing
//! the first non-blank character.

use std::f64::consts::TAU;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qprep_core::prep::TargetVector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub magnitude: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub n: usize,
    pub entries: Vec<Entry>,
}

impl VectorFile {
    pub fn from_target(x: &TargetVector) -> Self {
        Self {
            n: x.num_qubits(),
            entries: x
                .magnitudes()
                .iter()
                .zip(x.phases())
                .map(|(&magnitude, &phase)| Entry { magnitude, phase })
                .collect(),
        }
    }

    /// Checks every entry, naming the first offending one.
    pub fn into_target(self) -> Result<TargetVector> {
        if self.n == 0 || self.n > 30 {
            bail!("n = {} outside 1..=30", self.n);
        }
        let expected = 1usize << self.n;
        if self.entries.len() != expected {
            bail!(
                "n = {} needs {expected} entries, found {}",
                self.n,
                self.entries.len()
            );
        }
        for (i, e) in self.entries.iter().enumerate() {
            if !(e.magnitude >= 0.0 && e.magnitude.is_finite()) {
                bail!(
                    "entry {i}: magnitude {} must be finite and ≥ 0",
                    e.magnitude
                );
            }
            if !(0.0..TAU).contains(&e.phase) {
                bail!("entry {i}: phase {} outside [0, 2π)", e.phase);
            }
        }
        if self.entries.iter().all(|e| e.magnitude == 0.0) {
            bail!("all magnitudes are zero");
        }
        let (mags, phases) = self.entries.iter().map(|e| (e.magnitude, e.phase)).unzip();
        Ok(TargetVector::new(mags, phases)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

fn detect(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
        Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
        _ => match text.trim_start().chars().next() {
            Some('{') | Some('[') => Format::Json,
            _ => Format::Csv,
        },
    }
}

#[derive(Debug, Deserialize)]
struct VectorRow {
    index: usize,
    magnitude: f64,
    phase: f64,
}

fn csv_rows<T: serde::de::DeserializeOwned>(text: &str) -> Result<Vec<(usize, T)>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    reader
        .deserialize()
        .enumerate()
        .map(|(row, r)| {
            r.map(|v| (row, v))
                .with_context(|| format!("CSV row {}", row + 1))
        })
        .collect()
}

/// Places `(index, value)` pairs into a dense vector, requiring each index
/// in `0..len` exactly once and `len` a power of two.
fn dense<T: Copy>(pairs: Vec<(usize, T)>, what: &str) -> Result<Vec<T>> {
    let len = pairs.len();
    if len < 1 || !len.is_power_of_two() {
        bail!("{len} {what} rows; need a power of two");
    }
    let mut out: Vec<Option<T>> = vec![None; len];
    for (index, v) in pairs {
        let slot = out
            .get_mut(index)
            .ok_or_else(|| anyhow!("entry {index}: index out of range for {len} rows"))?;
        if slot.replace(v).is_some() {
            bail!("entry {index}: duplicate index");
        }
    }
    Ok(out.into_iter().map(|v| v.unwrap()).collect())
}

pub fn parse_vector(text: &str, path: &Path) -> Result<TargetVector> {
    let file = match detect(path, text) {
        Format::Json => {
            serde_json::from_str::<VectorFile>(text).context("malformed vector JSON")?
        }
        Format::Csv => {
            let rows: Vec<(usize, VectorRow)> = csv_rows(text)?;
            let pairs = rows
                .into_iter()
                .map(|(_, r)| {
                    (
                        r.index,
                        Entry {
                            magnitude: r.magnitude,
                            phase: r.phase,
                        },
                    )
                })
                .collect();
            let entries = dense(pairs, "vector")?;
            VectorFile {
                n: entries.len().trailing_zeros() as usize,
                entries,
            }
        }
    };
    file.into_target()
}

pub fn read_vector(path: &Path) -> Result<TargetVector> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_vector(&text, path).with_context(|| format!("in {}", path.display()))
}

pub fn write_vector_json(x: &TargetVector) -> String {
    let mut s = serde_json::to_string_pretty(&VectorFile::from_target(x)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PhaseJson {
    Object { phases: Vec<f64> },
    Bare(Vec<f64>),
}

#[derive(Debug, Deserialize)]
struct PhaseRow {
    index: usize,
    phase: f64,
}

/// Phase table in `[0, 2π)` whose length is a power of two ≥ 2.
pub fn parse_phases(text: &str, path: &Path) -> Result<Vec<f64>> {
    let phases = match detect(path, text) {
        Format::Json => match serde_json::from_str::<PhaseJson>(text)
            .context("malformed phase JSON: expected {\"phases\": [...]} or an array")?
        {
            PhaseJson::Object { phases } | PhaseJson::Bare(phases) => phases,
        },
        Format::Csv => {
            let rows: Vec<(usize, PhaseRow)> = csv_rows(text)?;
            dense(
                rows.into_iter().map(|(_, r)| (r.index, r.phase)).collect(),
                "phase",
            )?
        }
    };
    if phases.len() < 2 || !phases.len().is_power_of_two() {
        bail!("{} phases; need a power of two ≥ 2", phases.len());
    }
    for (i, &p) in phases.iter().enumerate() {
        if !(0.0..TAU).contains(&p) {
            bail!("entry {i}: phase {p} outside [0, 2π)");
        }
    }
    Ok(phases)
}

pub fn read_phases(path: &Path) -> Result<Vec<f64>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_phases(&text, path).with_context(|| format!("in {}", path.display()))
}
