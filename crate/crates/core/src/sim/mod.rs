//! Dense statevector simulation.
//!
//! Basis index convention: on a `q`-qubit state, qubit `k` is bit `q - 1 - k`
//! of the index, so qubit 0 is the most significant bit and `|i⟩` reads
//! left to right. Every other module shares this convention.

mod circuit;
mod gate;
mod qft;
mod state;

pub use circuit::{apply_circuit, Circuit};
pub(crate) use gate::dyadic_unit;
pub use gate::{apply_gate, Gate};
pub use qft::{qft_circuit, qft_gates};
pub use state::{new_basis_state, project_measure, Projection, StateVector, NORM_TOLERANCE};

/// Bit mask of `qubit` on a register of `num_qubits` qubits.
#[inline]
pub(crate) fn qubit_mask(qubit: usize, num_qubits: usize) -> usize {
    1 << (num_qubits - 1 - qubit)
}

pub(crate) fn qubits_mask(qubits: &[usize], num_qubits: usize) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| acc | qubit_mask(q, num_qubits))
}

/// Gathers the bits of `index` selected by `register` into a compact integer,
/// with `register[0]` as the most significant bit.
#[inline]
pub(crate) fn gather_bits(index: usize, register: &[usize], num_qubits: usize) -> usize {
    register.iter().fold(0, |acc, &q| {
        (acc << 1) | ((index >> (num_qubits - 1 - q)) & 1)
    })
}
