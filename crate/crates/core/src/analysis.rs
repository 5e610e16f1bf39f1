//! Distances, theoretical bounds and per-configuration bound reports.
//!
//! Distances are the plain 2-norm `‖|a⟩ − |b⟩‖` with no global-phase
//! alignment; [`overlap_fidelity`] is reported alongside as the
//! phase-insensitive metric.

use alloc::string::String;

use num_complex::Complex64;
use serde::Serialize;

use crate::diag::GateCounts;
use crate::prep::{self, Mode, PrecisionConfig, TargetVector};
use crate::sim::StateVector;
use crate::{Error, Result};

/// Absolute slack when comparing a measured quantity to its bound.
pub const BOUND_SLACK: f64 = 1e-12;

fn check_dims(a: &StateVector, b: &StateVector) -> Result<()> {
    if a.num_qubits() != b.num_qubits() {
        return Err(Error::DimensionMismatch {
            got: b.num_qubits(),
            expected: a.num_qubits(),
        });
    }
    Ok(())
}

pub fn state_distance(a: &StateVector, b: &StateVector) -> Result<f64> {
    check_dims(a, b)?;
    let sum: f64 = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    Ok(libm::sqrt(sum))
}

/// `|⟨a|b⟩|`.
pub fn overlap_fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    check_dims(a, b)?;
    let inner: Complex64 = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(inner.norm().min(1.0))
}

/// `‖x‖² / (2^n · max x_i²)`.
pub fn success_lower_bound(x: &TargetVector) -> f64 {
    let max = x.max_magnitude();
    x.norm_sqr() / (x.len() as f64 * max * max)
}

/// Amplitude-stage distance bound: `(n−1)√2π/2^{t−1}` deterministic,
/// `2^{2n+1}π/2^{t+1}` probabilistic.
pub fn amplitude_bound(n: usize, t: u32, mode: Mode) -> f64 {
    use core::f64::consts::{PI, SQRT_2};
    match mode {
        Mode::Deterministic => (n as f64 - 1.0).max(0.0) * SQRT_2 * PI / pow2(t as i32 - 1),
        Mode::Probabilistic => pow2(2 * n as i32 + 1) * PI / pow2(t as i32 + 1),
    }
}

/// Phase-stage distance bound `2^n·π/2^{t'−1}`.
pub fn phase_bound(n: usize, t_prime: u32) -> f64 {
    pow2(n as i32) * core::f64::consts::PI / pow2(t_prime as i32 - 1)
}

fn pow2(e: i32) -> f64 {
    libm::exp2(e as f64)
}

/// How a report's prepared state was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Execution {
    FullCircuit,
    FastPath,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportConfig {
    pub n: usize,
    pub t: u32,
    pub t_prime: u32,
    /// Grid level of the synthesized oracles (equal to `t`).
    pub m: u32,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl core::fmt::Display for ReportConfig {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "n={};t={};t_prime={};m={};mode={}",
            self.n, self.t, self.t_prime, self.m, self.mode
        )?;
        if let Some(e) = self.epsilon {
            write!(f, ";epsilon={e}")?;
        }
        Ok(())
    }
}

/// Measured quantities of one run against their theoretical bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub config: ReportConfig,
    pub measured_distance: f64,
    pub theoretical_bound: f64,
    pub measured_success_probability: Option<f64>,
    pub success_lower_bound: Option<f64>,
    pub gate_counts: GateCounts,
    pub satisfied: bool,
    pub seed: Option<u64>,
    pub overlap_fidelity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BoundReport {
    /// A report for a cell that failed to run.
    pub fn failed(config: ReportConfig, error: String) -> Self {
        Self {
            config,
            measured_distance: f64::NAN,
            theoretical_bound: f64::NAN,
            measured_success_probability: None,
            success_lower_bound: None,
            gate_counts: GateCounts::default(),
            satisfied: false,
            seed: None,
            overlap_fidelity: f64::NAN,
            error: Some(error),
        }
    }

    /// Recomputes `satisfied` from the measured values.
    pub fn check(&self) -> bool {
        let distance_ok = self.measured_distance <= self.theoretical_bound + BOUND_SLACK;
        let probability_ok = match (self.measured_success_probability, self.success_lower_bound) {
            (Some(p), Some(lb)) => p >= lb - BOUND_SLACK,
            _ => true,
        };
        self.error.is_none() && distance_ok && probability_ok
    }
}

/// Theoretical final-distance bound for `cfg` on `n` qubits.
pub fn total_bound(n: usize, cfg: &PrecisionConfig) -> f64 {
    amplitude_bound(n, cfg.t, cfg.mode) + phase_bound(n, cfg.t_prime)
}

/// Runs build, simulation, post-selection and phase stage for `(x, cfg)`
/// and compares the final distance to `|x⟩` with `epsilon` if given, or
/// with the bound implied by `(t, t')` otherwise.
pub fn evaluate_bounds(
    x: &TargetVector,
    cfg: &PrecisionConfig,
    epsilon: Option<f64>,
    execution: Execution,
) -> Result<BoundReport> {
    let n = x.num_qubits();
    let build = prep::build(x, cfg)?;
    let (state, probability) = match execution {
        Execution::FullCircuit => {
            let prepared = prep::execute(&build)?;
            (prepared.state, prepared.success_probability)
        }
        Execution::FastPath => prep::fast_path(x, cfg, true)?,
    };
    let target = x.state();
    let probabilistic = cfg.mode == Mode::Probabilistic;
    let mut report = BoundReport {
        config: ReportConfig {
            n,
            t: cfg.t,
            t_prime: cfg.t_prime,
            m: cfg.t,
            mode: cfg.mode,
            epsilon,
        },
        measured_distance: state_distance(&target, &state)?,
        theoretical_bound: epsilon.unwrap_or_else(|| total_bound(n, cfg)),
        measured_success_probability: probabilistic.then_some(probability),
        success_lower_bound: probabilistic.then(|| success_lower_bound(x)),
        gate_counts: build.diagonal_gate_counts,
        satisfied: false,
        seed: None,
        overlap_fidelity: overlap_fidelity(&target, &state)?,
        error: None,
    };
    report.satisfied = report.check();
    Ok(report)
}
