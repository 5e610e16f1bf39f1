//! Parallel bound sweeps over vectors × configurations.

use anyhow::{bail, Result};
use qprep_core::analysis::{evaluate_bounds, BoundReport, Execution, ReportConfig};
use qprep_core::prep::{Mode, PrecisionConfig, TargetVector};
use rayon::prelude::*;

use crate::report::ReportSink;

/// One configuration of the grid. `epsilon`, when set, replaces the bound
/// implied by `(t, t')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub mode: Mode,
    pub t: u32,
    pub t_prime: u32,
    pub epsilon: Option<f64>,
}

impl Cell {
    pub fn config(&self) -> PrecisionConfig {
        PrecisionConfig::new(self.mode, self.t, self.t_prime)
    }

    fn report_config(&self, n: usize) -> ReportConfig {
        ReportConfig {
            n,
            t: self.t,
            t_prime: self.t_prime,
            m: self.t,
            mode: self.mode,
            epsilon: self.epsilon,
        }
    }
}

/// Cartesian grid; cells are ordered by `t`, then `t'`, then mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub t: Vec<u32>,
    pub t_prime: Vec<u32>,
    pub modes: Vec<Mode>,
}

impl Grid {
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.t.len() * self.t_prime.len() * self.modes.len());
        for &t in &self.t {
            for &t_prime in &self.t_prime {
                for &mode in &self.modes {
                    out.push(Cell {
                        mode,
                        t,
                        t_prime,
                        epsilon: None,
                    });
                }
            }
        }
        out
    }
}

/// A target together with the seed it was drawn from, if any.
pub type Sample = (TargetVector, Option<u64>);

/// Runs one cell, turning any failure into a failed report.
pub fn run_cell(sample: &Sample, cell: &Cell, execution: Execution) -> BoundReport {
    let (x, seed) = sample;
    let mut report = match evaluate_bounds(x, &cell.config(), cell.epsilon, execution) {
        Ok(r) => r,
        Err(e) => BoundReport::failed(cell.report_config(x.num_qubits()), e.to_string()),
    };
    report.seed = *seed;
    report
}

/// `(vector, cell)` indices of flat job `k`.
fn job(k: usize, num_cells: usize) -> (usize, usize) {
    (k / num_cells, k % num_cells)
}

/// Evaluates every (vector, cell) pair in parallel. Results are ordered
/// vector-major, then by cell, whatever the completion order.
pub fn sweep(samples: &[Sample], cells: &[Cell], execution: Execution) -> Result<Vec<BoundReport>> {
    if cells.is_empty() {
        bail!("empty configuration grid");
    }
    Ok((0..samples.len() * cells.len())
        .into_par_iter()
        .map(|k| {
            let (v, c) = job(k, cells.len());
            run_cell(&samples[v], &cells[c], execution)
        })
        .collect())
}

/// Like [`sweep`], but streams results to `sink` in chunks of `chunk`
/// cells and skips the cells the sink already holds. Returns the number
/// of cells evaluated by this call.
pub fn sweep_resumable(
    samples: &[Sample],
    cells: &[Cell],
    execution: Execution,
    sink: &mut ReportSink,
    chunk: usize,
) -> Result<usize> {
    if cells.is_empty() {
        bail!("empty configuration grid");
    }
    let total = samples.len() * cells.len();
    let start = sink.written().min(total);
    let chunk = chunk.max(1);
    let mut k = start;
    while k < total {
        let end = (k + chunk).min(total);
        let reports: Vec<BoundReport> = (k..end)
            .into_par_iter()
            .map(|i| {
                let (v, c) = job(i, cells.len());
                run_cell(&samples[v], &cells[c], execution)
            })
            .collect();
        sink.append(&reports)?;
        k = end;
    }
    Ok(total - start)
}
