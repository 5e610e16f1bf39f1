//! Preparation circuits.
//!
//! Register layout of every built circuit: PE register on qubits `0..t`, data
//! register on `t..t+n`, and in probabilistic mode the rotation ancilla on
//! qubit `t + n`.
//!
//! The oracles handed to phase estimation always carry the *quantized*
//! angles, so each phase fraction is an exact `t`-bit dyadic and the PE
//! register is returned to `|0⟩^t` exactly by uncomputation. All
//! quantization is floor, on the same grid as [`crate::diag`].

mod build;
mod config;
mod run;
mod target;
mod tree;

pub use build::{
    build, build_deterministic, build_phase_stage, build_probabilistic, phase_estimation_gates,
    rotation_ladder, BuildResult, RegisterMap,
};
pub use config::{amplitude_precision, required_precision, Mode, PrecisionConfig};
pub use run::{
    execute, execute_amplitude_stage, fast_path, fast_path_prepare, run_circuit, Prepared,
    LEAKAGE_LIMIT,
};
pub use target::TargetVector;
pub use tree::{compute_angles, compute_marginals, AngleTable, MarginalTree};
