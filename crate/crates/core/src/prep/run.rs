use alloc::vec::Vec;

use num_complex::Complex64;

use super::{
    compute_angles, compute_marginals, BuildResult, Mode, PrecisionConfig, RegisterMap,
    TargetVector,
};
use crate::diag::{quantize, DyadicPhase};
use crate::sim::{project_measure, qubits_mask, Circuit, StateVector};
use crate::{Error, Result};

/// Leaked PE-register norm above which a run is rejected.
pub const LEAKAGE_LIMIT: f64 = 1e-6;

/// Outcome of simulating a preparation circuit from `|0…0⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prepared {
    /// The data register, renormalized.
    pub state: StateVector,
    /// Probability of the post-selected ancilla outcome (1 without ancilla).
    pub success_probability: f64,
    /// Norm of the amplitude left outside `|0⟩^t` on the PE register.
    pub pe_residual: f64,
}

/// Simulates `circuit` on the layout `registers`, post-selects the ancilla
/// on 0 if present, and reads the data register off the `|0⟩^t` PE branch.
pub fn run_circuit(circuit: &Circuit, registers: &RegisterMap) -> Result<Prepared> {
    let mut state = circuit.simulate()?;
    let mut success_probability = 1.0;
    if let Some(a) = registers.ancilla {
        let projection = project_measure(&state, a, false)?;
        success_probability = projection.probability;
        state = projection.into_state()?;
    }
    let q = state.num_qubits();
    let pe_mask = qubits_mask(&registers.pe, q);
    let leaked: f64 = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & pe_mask != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    let pe_residual = libm::sqrt(leaked);
    if pe_residual > LEAKAGE_LIMIT {
        return Err(Error::RegisterLeakage(pe_residual));
    }
    let mut fixed: Vec<(usize, bool)> = registers.pe.iter().map(|&p| (p, false)).collect();
    fixed.extend(registers.ancilla.map(|a| (a, false)));
    let (data, _) = state.restrict(&fixed)?;
    Ok(Prepared {
        state: StateVector::normalized(data)?,
        success_probability,
        pe_residual,
    })
}

/// Runs the full circuit, phase stage included.
pub fn execute(build: &BuildResult) -> Result<Prepared> {
    run_circuit(&build.circuit, &build.registers)
}

/// Runs the amplitude stage only (`|x_R⟩` / `|x_r⟩` before phases).
pub fn execute_amplitude_stage(build: &BuildResult) -> Result<Prepared> {
    run_circuit(&build.amplitude_stage(), &build.registers)
}

/// The state an ideal run of the circuit produces, computed directly from
/// the quantized angles without ancillas. Returns the data state and the
/// post-selection probability.
pub fn fast_path(
    x: &TargetVector,
    cfg: &PrecisionConfig,
    with_phases: bool,
) -> Result<(StateVector, f64)> {
    cfg.validate()?;
    let n = x.num_qubits();
    let angles = compute_angles(&compute_marginals(x), x, cfg)?;
    let (mut amps, probability) = match cfg.mode {
        Mode::Deterministic => {
            let levels: Vec<Vec<f64>> = (1..n).map(|k| angles.quantized_conditional(k)).collect();
            let amps = (0..x.len())
                .map(|i| {
                    let bit = |k: usize| (i >> (n - 1 - k)) & 1 == 1;
                    let branch = |a: f64, one: bool| {
                        if one {
                            libm::sin(a)
                        } else {
                            libm::cos(a)
                        }
                    };
                    let mut amp = branch(angles.root, bit(0));
                    for k in 1..n {
                        let prefix = i >> (n - k);
                        amp *= branch(levels[k - 1][prefix], bit(k));
                    }
                    Complex64::new(amp, 0.0)
                })
                .collect::<Vec<_>>();
            (amps, 1.0)
        }
        Mode::Probabilistic => {
            let cosines: Vec<f64> = angles
                .quantized_ratio()
                .iter()
                .map(|&a| libm::cos(a))
                .collect();
            let sum_sq: f64 = cosines.iter().map(|c| c * c).sum();
            let norm = libm::sqrt(sum_sq);
            let amps = cosines
                .iter()
                .map(|&c| Complex64::new(c / norm, 0.0))
                .collect();
            (amps, sum_sq / x.len() as f64)
        }
    };
    if with_phases {
        let spec = quantize(x.phases(), cfg.t_prime)?;
        for (a, p) in amps.iter_mut().zip(spec.numerators()) {
            let phase = DyadicPhase::new(*p, cfg.t_prime)?;
            *a *= crate::sim::dyadic_unit(phase.numerator() as i64, phase.level());
        }
    }
    Ok((StateVector::normalized(amps)?, probability))
}

/// The fast-path state with phases applied.
pub fn fast_path_prepare(x: &TargetVector, cfg: &PrecisionConfig) -> Result<StateVector> {
    Ok(fast_path(x, cfg, true)?.0)
}
