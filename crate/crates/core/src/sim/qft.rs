use alloc::vec::Vec;

use super::{Circuit, Gate};
use crate::{Error, Result};

/// Quantum Fourier transform `|j⟩ → 2^{-t/2} Σ_k e^{2πi·jk/2^t}|k⟩` on
/// `register` (first entry most significant), as Hadamards, controlled
/// phases `C²Z^(l)` and a final bit-reversal of swaps. The inverse negates
/// every phase level and reverses the order.
pub fn qft_gates(register: &[usize], inverse: bool) -> Vec<Gate> {
    let t = register.len();
    let mut gates = Vec::with_capacity(t * (t + 1) / 2 + t / 2);
    for i in 0..t {
        gates.push(Gate::Hadamard {
            target: register[i],
        });
        for k in i + 1..t {
            gates.push(Gate::ControlledZPow {
                level: (k - i + 1) as i32,
                qubits: alloc::vec![register[i], register[k]],
            });
        }
    }
    for i in 0..t / 2 {
        gates.push(Gate::Swap {
            a: register[i],
            b: register[t - 1 - i],
        });
    }
    if inverse {
        gates.reverse();
        for g in gates.iter_mut() {
            *g = g.inverse();
        }
    }
    gates
}

/// The QFT on `register` as a standalone circuit sized to its largest qubit.
pub fn qft_circuit(register: &[usize], inverse: bool) -> Result<Circuit> {
    let width = register
        .iter()
        .max()
        .map(|q| q + 1)
        .ok_or(Error::EmptyQubitSet)?;
    Circuit::from_gates(width, qft_gates(register, inverse))
}
