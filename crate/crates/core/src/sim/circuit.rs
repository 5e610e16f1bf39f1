use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{Gate, StateVector};
use crate::{Error, Result};

/// An ordered gate sequence on a fixed number of qubits.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(num_qubits)?;
        }
        Ok(Self { num_qubits, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Appends `other`, relabelling its qubit `q` as `q + offset`.
    pub fn append_shifted(&mut self, other: &Circuit, offset: usize) -> Result<()> {
        self.extend(other.gates.iter().map(|g| g.shifted(offset)))
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// The sub-circuit made of gates `range`.
    pub fn slice(&self, range: core::ops::Range<usize>) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates[range].to_vec(),
        }
    }

    pub fn simulate(&self) -> Result<StateVector> {
        let mut state = StateVector::basis(self.num_qubits, 0)?;
        self.apply_to(&mut state)?;
        Ok(state)
    }

    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                got: state.num_qubits(),
                expected: self.num_qubits,
            });
        }
        for g in &self.gates {
            state.apply(g)?;
        }
        Ok(())
    }
}

pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    let mut out = state.clone();
    circuit.apply_to(&mut out)?;
    Ok(out)
}
