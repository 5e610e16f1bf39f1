use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::sim::StateVector;
use crate::{Error, Result};

/// The classical input `x_i·e^{iθ_i}` with `x_i ≥ 0`, `θ_i ∈ [0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetVector {
    num_qubits: usize,
    magnitudes: Vec<f64>,
    phases: Vec<f64>,
}

impl TargetVector {
    pub fn new(magnitudes: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        let len = magnitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidTarget(format!(
                "length {len} is not a power of two ≥ 2"
            )));
        }
        if phases.len() != len {
            return Err(Error::InvalidTarget(format!(
                "{} phases for {len} magnitudes",
                phases.len()
            )));
        }
        for (i, &m) in magnitudes.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidTarget(format!(
                    "entry {i}: magnitude {m} is not a finite nonnegative number"
                )));
            }
        }
        for (i, &p) in phases.iter().enumerate() {
            if !(0.0..TAU).contains(&p) {
                return Err(Error::InvalidTarget(format!(
                    "entry {i}: phase {p} is outside [0, 2π)"
                )));
            }
        }
        if magnitudes.iter().all(|&m| m == 0.0) {
            return Err(Error::InvalidTarget("all magnitudes are zero".into()));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            magnitudes,
            phases,
        })
    }

    /// Real nonnegative vector with all phases zero.
    pub fn real(magnitudes: Vec<f64>) -> Result<Self> {
        let phases = alloc::vec![0.0; magnitudes.len()];
        Self::new(magnitudes, phases)
    }

    pub fn from_complex(values: &[Complex64]) -> Result<Self> {
        let magnitudes = values.iter().map(|z| z.norm()).collect();
        let phases = values
            .iter()
            .map(|z| {
                let p = z.arg();
                let p = if p < 0.0 { p + TAU } else { p };
                if p >= TAU {
                    0.0
                } else {
                    p
                }
            })
            .collect();
        Self::new(magnitudes, phases)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.magnitudes.iter().map(|m| m * m).sum()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.magnitudes.iter().copied().fold(0.0, f64::max)
    }

    /// `|x_R⟩ = Σ x_i/‖x‖ |i⟩`, phases dropped.
    pub fn real_state(&self) -> StateVector {
        let norm = self.norm();
        let amps = self
            .magnitudes
            .iter()
            .map(|&m| Complex64::new(m / norm, 0.0))
            .collect();
        StateVector::normalized(amps).expect("nonzero target")
    }

    /// `|x⟩ = Σ e^{iθ_i} x_i/‖x‖ |i⟩`.
    pub fn state(&self) -> StateVector {
        let norm = self.norm();
        let amps = self
            .magnitudes
            .iter()
            .zip(&self.phases)
            .map(|(&m, &p)| Complex64::from_polar(m / norm, p))
            .collect();
        StateVector::normalized(amps).expect("nonzero target")
    }
}
