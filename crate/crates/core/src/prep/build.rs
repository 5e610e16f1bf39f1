use alloc::vec::Vec;
use core::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{compute_angles, compute_marginals, AngleTable, Mode, PrecisionConfig, TargetVector};
use crate::diag::{peel_synthesize, quantize, GateCounts, PhaseSpec};
use crate::sim::{Circuit, Gate};
use crate::Result;

/// Which qubits play which role in a built circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterMap {
    /// Phase-estimation register, most significant bit first.
    pub pe: Vec<usize>,
    /// Data register, most significant bit first.
    pub data: Vec<usize>,
    /// Rotation ancilla (probabilistic mode only).
    pub ancilla: Option<usize>,
}

impl RegisterMap {
    fn new(t: usize, n: usize, ancilla: bool) -> Self {
        Self {
            pe: (0..t).collect(),
            data: (t..t + n).collect(),
            ancilla: ancilla.then_some(t + n),
        }
    }

    pub fn total(&self) -> usize {
        self.pe.len() + self.data.len() + usize::from(self.ancilla.is_some())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildResult {
    /// Amplitude stage followed by the phase stage.
    pub circuit: Circuit,
    pub registers: RegisterMap,
    /// Probability of reading the ancilla as 0; 1 in deterministic mode.
    pub expected_success_probability: f64,
    /// Index of the first phase-stage gate in `circuit`.
    pub phase_stage_start: usize,
    pub config: PrecisionConfig,
    pub angles: AngleTable,
    /// Peel-synthesis counts of every diagonal operator the circuit uses:
    /// one per oracle (at level `t`) plus the phase stage (at level `t'`).
    pub diagonal_gate_counts: GateCounts,
}

impl BuildResult {
    /// The circuit without its phase stage.
    pub fn amplitude_stage(&self) -> Circuit {
        self.circuit.slice(0..self.phase_stage_start)
    }
}

/// H on every PE qubit, oracle powers `U^{2^{t−1−s}}` controlled by PE qubit
/// `s`, then the inverse QFT. With `oracle_phases[i] = 2π·y_i/2^t` this maps
/// `|0⟩^t|i⟩` to `|y_i⟩|i⟩` exactly.
pub fn phase_estimation_gates(
    pe: &[usize],
    register: &[usize],
    oracle_phases: &[f64],
) -> Vec<Gate> {
    let t = pe.len();
    let mut gates: Vec<Gate> = pe.iter().map(|&q| Gate::Hadamard { target: q }).collect();
    for (s, &control) in pe.iter().enumerate() {
        gates.push(Gate::DiagonalOracle {
            register: register.to_vec(),
            phases: oracle_phases.to_vec(),
            power: 1i64 << (t - 1 - s),
            controls: alloc::vec![control],
        });
    }
    gates.push(Gate::Qft {
        register: pe.to_vec(),
        inverse: true,
    });
    gates
}

/// Controlled rotations realizing `R_Y(2ᾱ)` on `target` from a PE readout
/// `y` of `c·ᾱ`: PE bit `s` (weight `2^{t−1−s}`) drives `R_Y(2π/(c·2^s))`.
/// Y rotations compose additively, so the product is exactly `R_Y(2ᾱ)`.
pub fn rotation_ladder(pe: &[usize], target: usize, multiplier: u32) -> Vec<Gate> {
    pe.iter()
        .enumerate()
        .map(|(s, &control)| Gate::RotationY {
            angle: TAU / ((multiplier as u64) << s) as f64,
            target,
            controls: alloc::vec![control],
        })
        .collect()
}

fn uncompute(gates: &[Gate]) -> impl Iterator<Item = Gate> + '_ {
    gates.iter().rev().map(Gate::inverse)
}

fn oracle_phases(readout: &[crate::diag::DyadicPhase]) -> Vec<f64> {
    readout.iter().map(|y| y.radians()).collect()
}

fn oracle_counts(readout: &[crate::diag::DyadicPhase], t: u32) -> Result<GateCounts> {
    let spec = PhaseSpec::new(t, readout.iter().map(|y| y.numerator()).collect())?;
    Ok(peel_synthesize(&spec).counts)
}

/// Quantizes the target phases at level `t'` and synthesizes
/// `diag(e^{iθ̄_i})` on qubits `0..n`, global phase included.
pub fn build_phase_stage(x: &TargetVector, t_prime: u32) -> Result<Circuit> {
    let spec = quantize(x.phases(), t_prime)?;
    Circuit::from_gates(x.num_qubits(), peel_synthesize(&spec).to_gates())
}

fn phase_stage_counts(x: &TargetVector, t_prime: u32) -> Result<GateCounts> {
    Ok(peel_synthesize(&quantize(x.phases(), t_prime)?).counts)
}

/// Marginal-tree preparation: `R_Y(2α⁰₀)` on the first data qubit, then for
/// each further data qubit a phase-estimation round that reads the
/// conditional angles into the PE register, rotates the new qubit, and
/// uncomputes the register.
pub fn build_deterministic(x: &TargetVector, cfg: &PrecisionConfig) -> Result<BuildResult> {
    let cfg = PrecisionConfig {
        mode: Mode::Deterministic,
        ..*cfg
    };
    cfg.validate()?;
    let n = x.num_qubits();
    let t = cfg.t as usize;
    let angles = compute_angles(&compute_marginals(x), x, &cfg)?;
    let registers = RegisterMap::new(t, n, false);
    let (pe, data) = (&registers.pe, &registers.data);

    let mut circuit = Circuit::new(registers.total());
    circuit.push(Gate::ry(2.0 * angles.root, data[0]))?;
    let mut counts = GateCounts::default();
    for k in 1..n {
        let readout = &angles.conditional_readout[k - 1];
        let estimate = phase_estimation_gates(pe, &data[..k], &oracle_phases(readout));
        circuit.extend(estimate.iter().cloned())?;
        circuit.extend(rotation_ladder(pe, data[k], cfg.angle_multiplier))?;
        circuit.extend(uncompute(&estimate))?;
        counts.merge(&oracle_counts(readout, cfg.t)?);
    }

    let phase_stage_start = circuit.len();
    circuit.append_shifted(&build_phase_stage(x, cfg.t_prime)?, t)?;
    counts.merge(&phase_stage_counts(x, cfg.t_prime)?);

    Ok(BuildResult {
        circuit,
        registers,
        expected_success_probability: 1.0,
        phase_stage_start,
        config: cfg,
        angles,
        diagonal_gate_counts: counts,
    })
}

/// Post-selected preparation: uniform superposition on the data register,
/// one phase-estimation round reading `4α_i`, a rotation of the ancilla by
/// `2ᾱ_i`, uncomputation, and the phase stage. Reading the ancilla as 0
/// leaves `Σ cos ᾱ_i |i⟩` up to normalization.
pub fn build_probabilistic(x: &TargetVector, cfg: &PrecisionConfig) -> Result<BuildResult> {
    let cfg = PrecisionConfig {
        mode: Mode::Probabilistic,
        ..*cfg
    };
    cfg.validate()?;
    let n = x.num_qubits();
    let t = cfg.t as usize;
    let angles = compute_angles(&compute_marginals(x), x, &cfg)?;
    let registers = RegisterMap::new(t, n, true);
    let (pe, data) = (&registers.pe, &registers.data);
    let ancilla = registers
        .ancilla
        .expect("probabilistic layout has an ancilla");

    let mut circuit = Circuit::new(registers.total());
    circuit.extend(data.iter().map(|&q| Gate::Hadamard { target: q }))?;
    let estimate = phase_estimation_gates(pe, data, &oracle_phases(&angles.ratio_readout));
    circuit.extend(estimate.iter().cloned())?;
    circuit.extend(rotation_ladder(pe, ancilla, 4))?;
    circuit.extend(uncompute(&estimate))?;
    let mut counts = oracle_counts(&angles.ratio_readout, cfg.t)?;

    let phase_stage_start = circuit.len();
    circuit.append_shifted(&build_phase_stage(x, cfg.t_prime)?, t)?;
    counts.merge(&phase_stage_counts(x, cfg.t_prime)?);

    let expected_success_probability = angles
        .quantized_ratio()
        .iter()
        .map(|&a| {
            let c = libm::cos(a);
            c * c
        })
        .sum::<f64>()
        / x.len() as f64;

    Ok(BuildResult {
        circuit,
        registers,
        expected_success_probability,
        phase_stage_start,
        config: cfg,
        angles,
        diagonal_gate_counts: counts,
    })
}

pub fn build(x: &TargetVector, cfg: &PrecisionConfig) -> Result<BuildResult> {
    match cfg.mode {
        Mode::Deterministic => build_deterministic(x, cfg),
        Mode::Probabilistic => build_probabilistic(x, cfg),
    }
}
