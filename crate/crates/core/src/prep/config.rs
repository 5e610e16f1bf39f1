use core::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Deterministic,
    Probabilistic,
}

impl core::fmt::Display for Mode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Mode::Deterministic => "deterministic",
            Mode::Probabilistic => "probabilistic",
        })
    }
}

/// Register widths and encoding choices for one preparation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Phase-estimation register width.
    pub t: u32,
    /// Grid level of the final phase stage.
    pub t_prime: u32,
    pub mode: Mode,
    /// Which multiple of `α` the oracle encodes: 1, 2 or 4. The rotation
    /// ladder on PE bit `s` is then `R_Y(2π/(c·2^s))`.
    pub angle_multiplier: u32,
}

impl PrecisionConfig {
    /// Deterministic mode with the `2α` encoding.
    pub fn deterministic(t: u32, t_prime: u32) -> Self {
        Self {
            t,
            t_prime,
            mode: Mode::Deterministic,
            angle_multiplier: 2,
        }
    }

    pub fn probabilistic(t: u32, t_prime: u32) -> Self {
        Self {
            t,
            t_prime,
            mode: Mode::Probabilistic,
            angle_multiplier: 4,
        }
    }

    pub fn new(mode: Mode, t: u32, t_prime: u32) -> Self {
        match mode {
            Mode::Deterministic => Self::deterministic(t, t_prime),
            Mode::Probabilistic => Self::probabilistic(t, t_prime),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 || self.t > 40 {
            return Err(Error::InvalidConfig(alloc::format!(
                "t = {} outside 1..=40",
                self.t
            )));
        }
        if self.t_prime == 0 || self.t_prime > crate::diag::MAX_LEVEL {
            return Err(Error::InvalidConfig(alloc::format!(
                "t' = {} outside 1..={}",
                self.t_prime,
                crate::diag::MAX_LEVEL
            )));
        }
        match (self.mode, self.angle_multiplier) {
            (Mode::Deterministic, 1 | 2 | 4) | (Mode::Probabilistic, 4) => Ok(()),
            (mode, c) => Err(Error::InvalidConfig(alloc::format!(
                "angle multiplier {c} not supported in {mode} mode"
            ))),
        }
    }
}

fn ceil_log2(v: f64) -> i64 {
    libm::ceil(libm::log2(v)) as i64
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Ok(())
}

/// Widths `(t, t')` guaranteeing final distance `≤ ε` to `|x⟩`:
///
/// - deterministic: `t = ⌈log₂(2(n−1)√2π/ε)⌉ + 1`
/// - probabilistic: `t = 2n + ⌈log₂(2π/ε)⌉`
/// - both: `t' = n + 1 + ⌈log₂(2π/ε)⌉`
///
/// With a single qubit the deterministic circuit has no phase-estimation
/// round and `t = 1`.
pub fn required_precision(n: usize, epsilon: f64, mode: Mode) -> Result<PrecisionConfig> {
    check_epsilon(epsilon)?;
    if n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    let t_prime = (n as i64 + 1 + ceil_log2(2.0 * PI / epsilon)) as u32;
    let t = match mode {
        Mode::Deterministic if n == 1 => 1,
        Mode::Deterministic => {
            (ceil_log2(2.0 * (n as f64 - 1.0) * SQRT_2 * PI / epsilon) + 1).max(1) as u32
        }
        Mode::Probabilistic => (2 * n as i64 + ceil_log2(2.0 * PI / epsilon)) as u32,
    };
    Ok(PrecisionConfig::new(mode, t, t_prime))
}

/// PE width bounding only the amplitude stage by `ε` (no phase budget):
/// `⌈log₂((n−1)√2π/ε)⌉ + 1` deterministic, `2n + ⌈log₂(π/ε)⌉`
/// probabilistic.
pub fn amplitude_precision(n: usize, epsilon: f64, mode: Mode) -> Result<u32> {
    check_epsilon(epsilon)?;
    Ok(match mode {
        Mode::Deterministic if n <= 1 => 1,
        Mode::Deterministic => {
            (ceil_log2((n as f64 - 1.0) * SQRT_2 * PI / epsilon) + 1).max(1) as u32
        }
        Mode::Probabilistic => (2 * n as i64 + ceil_log2(PI / epsilon)) as u32,
    })
}
