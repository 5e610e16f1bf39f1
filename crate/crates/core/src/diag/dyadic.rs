use alloc::vec::Vec;
use core::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported grid level; numerators must fit in a `u64`.
pub const MAX_LEVEL: u32 = 62;

/// The angle `2π·numerator/2^level`, with `numerator < 2^level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicPhase {
    numerator: u64,
    level: u32,
}

impl DyadicPhase {
    pub fn new(numerator: u64, level: u32) -> Result<Self> {
        check_level(level)?;
        if numerator >> level != 0 {
            return Err(Error::NumeratorOutOfRange { numerator, level });
        }
        Ok(Self { numerator, level })
    }

    pub fn zero(level: u32) -> Self {
        Self {
            numerator: 0,
            level,
        }
    }

    /// Largest grid point `≤ angle`. Angles that sit on a grid point up to
    /// floating-point representation error snap to that point; `2π` itself
    /// (and anything that rounds up to it) maps to the top grid point
    /// `2π − 2π/2^level`.
    pub fn floor(angle: f64, level: u32) -> Result<Self> {
        check_level(level)?;
        if !angle.is_finite() || angle < 0.0 {
            return Err(Error::AngleOutOfRange {
                index: 0,
                value: angle,
            });
        }
        let denom = (1u64 << level) as f64;
        let scaled = angle / TAU * denom;
        let nearest = libm::round(scaled);
        let steps = if (scaled - nearest).abs() <= 1e-12 * nearest.max(1.0) {
            nearest
        } else {
            libm::floor(scaled)
        };
        let top = (1u64 << level) - 1;
        let numerator = if steps >= denom { top } else { steps as u64 };
        Ok(Self { numerator, level })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn radians(&self) -> f64 {
        TAU * self.numerator as f64 / (1u64 << self.level) as f64
    }

    /// The same angle on the finer grid `level`.
    pub fn refine(&self, level: u32) -> Result<Self> {
        check_level(level)?;
        if level < self.level {
            return Err(Error::InvalidLevel(level));
        }
        Ok(Self {
            numerator: self.numerator << (level - self.level),
            level,
        })
    }
}

fn check_level(level: u32) -> Result<()> {
    if level == 0 || level > MAX_LEVEL {
        return Err(Error::InvalidLevel(level));
    }
    Ok(())
}

/// A diagonal phase table on `n` qubits, all entries on the grid of one
/// level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSpec {
    num_qubits: usize,
    level: u32,
    numerators: Vec<u64>,
}

impl PhaseSpec {
    pub fn new(level: u32, numerators: Vec<u64>) -> Result<Self> {
        check_level(level)?;
        let len = numerators.len();
        if !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        if let Some(&bad) = numerators.iter().find(|&&p| p >> level != 0) {
            return Err(Error::NumeratorOutOfRange {
                numerator: bad,
                level,
            });
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            level,
            numerators,
        })
    }

    pub fn from_entries(entries: &[DyadicPhase]) -> Result<Self> {
        let level = entries
            .first()
            .map(|e| e.level)
            .ok_or(Error::NotPowerOfTwo(0))?;
        if let Some(e) = entries.iter().find(|e| e.level != level) {
            return Err(Error::MixedLevels(level, e.level));
        }
        Self::new(level, entries.iter().map(|e| e.numerator).collect())
    }

    pub fn zeros(num_qubits: usize, level: u32) -> Result<Self> {
        Self::new(level, alloc::vec![0; 1 << num_qubits])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn entry(&self, index: usize) -> DyadicPhase {
        DyadicPhase {
            numerator: self.numerators[index],
            level: self.level,
        }
    }

    pub fn entries(&self) -> Vec<DyadicPhase> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }

    pub fn radians(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.entry(i).radians()).collect()
    }

    /// Indices with a nonzero phase.
    pub fn support(&self) -> Vec<usize> {
        self.numerators
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Floor-quantizes `angles` (radians in `[0, 2π)`) onto the level-`m` grid.
pub fn quantize(angles: &[f64], level: u32) -> Result<PhaseSpec> {
    check_level(level)?;
    let numerators = angles
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            if !(0.0..TAU).contains(&value) {
                return Err(Error::AngleOutOfRange { index, value });
            }
            Ok(DyadicPhase::floor(value, level)?.numerator)
        })
        .collect::<Result<Vec<_>>>()?;
    PhaseSpec::new(level, numerators)
}
