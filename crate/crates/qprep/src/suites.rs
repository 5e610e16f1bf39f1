//! Verification suites behind `qprep verify`.

use anyhow::{bail, Result};
use qprep_core::analysis::{BoundReport, Execution};
use qprep_core::diag::{peel_synthesize, reconstruct_gates, PhaseSpec};
use qprep_core::prep::{build, execute, fast_path, required_precision, Mode, PrecisionConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::random::random_batch;
use crate::report::{self, ReportFormat};
use crate::sweep::{sweep, Cell, Grid, Sample};

/// Largest `n` for which the synth suite enumerates every `m = 1` diagonal.
pub const MAX_EXHAUSTIVE_N: usize = 4;
pub const DUALPATH_TOLERANCE: f64 = 1e-9;
pub const PE_RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Results of one suite run, pre-rendered in every output format.
pub struct SuiteOutcome {
    pub cells: usize,
    pub failures: Vec<String>,
    json: String,
    csv: String,
    jsonl: String,
}

impl SuiteOutcome {
    fn from_rows<T: Serialize>(
        rows: &[T],
        csv: String,
        satisfied: impl Fn(&T) -> bool,
        label: impl Fn(&T) -> String,
    ) -> Self {
        Self {
            cells: rows.len(),
            failures: rows.iter().filter(|r| !satisfied(r)).map(label).collect(),
            json: serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
            csv,
            jsonl: rows
                .iter()
                .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
                .collect(),
        }
    }

    fn from_reports(reports: &[BoundReport]) -> Self {
        Self::from_rows(
            reports,
            report::to_csv(reports),
            |r| r.satisfied,
            |r| format!("{} seed={:?} error={:?}", r.config, r.seed, r.error),
        )
    }

    pub fn render(&self, format: ReportFormat) -> &str {
        match format {
            ReportFormat::Json => &self.json,
            ReportFormat::Csv => &self.csv,
            ReportFormat::JsonLines => &self.jsonl,
        }
    }
}

/// CSV of flat rows, header from the field names.
fn flat_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

/// Grid of the bounds suite: deterministic `t ∈ {6, 8, 10}` at `t' = 10`
/// against the bound implied by the widths, then `required_precision` for
/// `ε ∈ {0.5, 0.1}` in both modes against `ε`.
pub fn bounds_cells(n: usize) -> Result<Vec<Cell>> {
    let mut cells = Grid {
        t: vec![6, 8, 10],
        t_prime: vec![10],
        modes: vec![Mode::Deterministic],
    }
    .cells();
    for epsilon in [0.5, 0.1] {
        for mode in [Mode::Deterministic, Mode::Probabilistic] {
            let cfg = required_precision(n, epsilon, mode)?;
            cells.push(Cell {
                mode,
                t: cfg.t,
                t_prime: cfg.t_prime,
                epsilon: Some(epsilon),
            });
        }
    }
    Ok(cells)
}

fn samples(n: usize, trials: usize, seed: u64) -> Vec<Sample> {
    random_batch(n, trials, seed)
        .into_iter()
        .map(|(x, s)| (x, Some(s)))
        .collect()
}

pub fn bounds(n: usize, trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let reports = sweep(
        &samples(n, trials, seed),
        &bounds_cells(n)?,
        Execution::FullCircuit,
    )?;
    Ok(SuiteOutcome::from_reports(&reports))
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthCase {
    pub case: String,
    pub n: usize,
    pub m: u32,
    pub gate_count: usize,
    pub gate_bound: u64,
    pub exact: bool,
    pub satisfied: bool,
}

fn synth_case(case: String, spec: &PhaseSpec) -> SynthCase {
    let n = spec.num_qubits();
    let m = spec.level();
    let result = peel_synthesize(spec);
    let exact = reconstruct_gates(&result.to_gates(), n, m)
        .map(|nums| nums == spec.numerators())
        .unwrap_or(false);
    let gate_bound = m as u64 * ((1u64 << n) - 1);
    let gate_count = result.gates.len();
    SynthCase {
        case,
        n,
        m,
        gate_count,
        gate_bound,
        exact,
        satisfied: exact && gate_count as u64 <= gate_bound,
    }
}

/// Every `m = 1` diagonal on `n` qubits, then `trials` random diagonals
/// with `m ∈ 1..=5`.
pub fn synth(n: usize, trials: usize, seed: u64) -> Result<SuiteOutcome> {
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        bail!("synth suite supports n in 1..={MAX_EXHAUSTIVE_N}");
    }
    let len = 1usize << n;
    let mut cases: Vec<SynthCase> = (0..1u64 << len)
        .into_par_iter()
        .map(|bits| {
            let nums = (0..len).map(|i| bits >> i & 1).collect();
            let spec = PhaseSpec::new(1, nums).expect("valid m = 1 spec");
            synth_case(format!("exhaustive:{bits}"), &spec)
        })
        .collect();
    cases.extend((0..trials).map(|k| {
        let case_seed = seed.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
        let m = rng.random_range(1..=5u32);
        let nums = (0..len).map(|_| rng.random_range(0..1u64 << m)).collect();
        let spec = PhaseSpec::new(m, nums).expect("valid random spec");
        synth_case(format!("random:{case_seed}"), &spec)
    }));
    Ok(SuiteOutcome::from_rows(
        &cases,
        flat_csv(&cases),
        |c| c.satisfied,
        |c| {
            format!(
                "{} n={} m={} gates={} bound={} exact={}",
                c.case, c.n, c.m, c.gate_count, c.gate_bound, c.exact
            )
        },
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct DualPathCase {
    pub config: String,
    pub seed: u64,
    pub max_amplitude_difference: f64,
    pub probability_difference: f64,
    pub pe_residual: f64,
    pub satisfied: bool,
    pub error: Option<String>,
}

fn dual_path_case(sample: &Sample, cfg: PrecisionConfig) -> DualPathCase {
    let (x, seed) = sample;
    let config = format!(
        "n={};t={};t_prime={};mode={}",
        x.num_qubits(),
        cfg.t,
        cfg.t_prime,
        cfg.mode
    );
    let run = || -> Result<(f64, f64, f64)> {
        let full = execute(&build(x, &cfg)?)?;
        let (fast, p) = fast_path(x, &cfg, true)?;
        let diff = full
            .state
            .amplitudes()
            .iter()
            .zip(fast.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        Ok((diff, (full.success_probability - p).abs(), full.pe_residual))
    };
    match run() {
        Ok((diff, dp, residual)) => DualPathCase {
            config,
            seed: seed.unwrap_or_default(),
            max_amplitude_difference: diff,
            probability_difference: dp,
            pe_residual: residual,
            satisfied: diff < DUALPATH_TOLERANCE
                && dp < DUALPATH_TOLERANCE
                && residual < PE_RESIDUAL_TOLERANCE,
            error: None,
        },
        Err(e) => DualPathCase {
            config,
            seed: seed.unwrap_or_default(),
            max_amplitude_difference: f64::NAN,
            probability_difference: f64::NAN,
            pe_residual: f64::NAN,
            satisfied: false,
            error: Some(format!("{e:#}")),
        },
    }
}

/// Fast path against full simulation for `t ∈ {4, 6, 8}`, `t' = 8`, both
/// modes.
pub fn dualpath(n: usize, trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let samples = samples(n, trials, seed);
    let mut configs = Vec::new();
    for t in [4, 6, 8] {
        configs.push(PrecisionConfig::deterministic(t, 8));
        configs.push(PrecisionConfig::probabilistic(t, 8));
    }
    let cases: Vec<DualPathCase> = (0..samples.len() * configs.len())
        .into_par_iter()
        .map(|k| dual_path_case(&samples[k / configs.len()], configs[k % configs.len()]))
        .collect();
    Ok(SuiteOutcome::from_rows(
        &cases,
        flat_csv(&cases),
        |c| c.satisfied,
        |c| {
            format!(
                "{} seed={} diff={:e} residual={:e} error={:?}",
                c.config, c.seed, c.max_amplitude_difference, c.pe_residual, c.error
            )
        },
    ))
}
