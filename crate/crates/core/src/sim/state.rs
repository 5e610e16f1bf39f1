use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::qubit_mask;
use crate::{Error, Result};

/// Largest allowed deviation of a state's 2-norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Probabilities at or below this are treated as impossible outcomes.
const ZERO_PROBABILITY: f64 = 1e-300;

/// A normalized pure state of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits >= usize::BITS as usize {
            return Err(Error::DimensionMismatch {
                got: num_qubits,
                expected: 1,
            });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, num_qubits });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps amplitudes that are already normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = num_qubits_for(amplitudes.len())?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Normalizes `amplitudes` before wrapping them.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = num_qubits_for(amplitudes.len())?;
        let norm = norm(&amplitudes);
        if norm <= ZERO_PROBABILITY {
            return Err(Error::NotNormalized(norm));
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Probability that `qubit` reads `outcome`.
    pub fn probability(&self, qubit: usize, outcome: bool) -> Result<f64> {
        self.check_qubit(qubit)?;
        let mask = qubit_mask(qubit, self.num_qubits);
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| (i & mask != 0) == outcome)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Amplitudes of the qubits not listed in `fixed`, restricted to the
    /// subspace where each fixed qubit has the given value. The remaining
    /// qubits keep their relative order. Also returns the captured squared
    /// norm. The returned amplitudes are not renormalized.
    pub fn restrict(&self, fixed: &[(usize, bool)]) -> Result<(Vec<Complex64>, f64)> {
        let mut fixed_mask = 0usize;
        let mut fixed_value = 0usize;
        for &(q, v) in fixed {
            self.check_qubit(q)?;
            let m = qubit_mask(q, self.num_qubits);
            if fixed_mask & m != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            fixed_mask |= m;
            if v {
                fixed_value |= m;
            }
        }
        let out: Vec<Complex64> = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & fixed_mask == fixed_value)
            .map(|(_, a)| *a)
            .collect();
        let captured = out.iter().map(|a| a.norm_sqr()).sum();
        Ok((out, captured))
    }

    pub(crate) fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }
}

fn num_qubits_for(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

fn norm(amplitudes: &[Complex64]) -> f64 {
    libm::sqrt(amplitudes.iter().map(|a| a.norm_sqr()).sum())
}

pub fn new_basis_state(num_qubits: usize, index: usize) -> Result<StateVector> {
    StateVector::basis(num_qubits, index)
}

/// Result of a projective single-qubit measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub probability: f64,
    /// Renormalized post-measurement state; `None` when the outcome is
    /// impossible.
    pub state: Option<StateVector>,
}

impl Projection {
    pub fn into_state(self) -> Result<StateVector> {
        self.state.ok_or(Error::ZeroProbability)
    }
}

pub fn project_measure(state: &StateVector, target: usize, outcome: bool) -> Result<Projection> {
    let probability = state.probability(target, outcome)?;
    if probability <= ZERO_PROBABILITY {
        return Ok(Projection {
            probability: 0.0,
            state: None,
        });
    }
    let mask = qubit_mask(target, state.num_qubits);
    let scale = 1.0 / libm::sqrt(probability);
    let amplitudes = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if (i & mask != 0) == outcome {
                a * scale
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(Projection {
        probability,
        state: Some(StateVector {
            num_qubits: state.num_qubits,
            amplitudes,
        }),
    })
}
