use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{gather_bits, qft::qft_gates, qubit_mask, qubits_mask, StateVector};
use crate::{Error, Result};

/// The gate vocabulary of the preparation circuits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Hadamard {
        target: usize,
    },
    PauliX {
        target: usize,
    },
    /// `R_Y(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`, applied when every
    /// control reads 1.
    RotationY {
        angle: f64,
        target: usize,
        controls: Vec<usize>,
    },
    /// `C^kZ^(l)`: phase `e^{sign(l)·2πi/2^|l|}` on basis states where all
    /// listed qubits are 1.
    ControlledZPow {
        level: i32,
        qubits: Vec<usize>,
    },
    /// Multiplies the amplitude of `|c⟩|i⟩` by `e^{i·power·phases[i]}` when
    /// all controls are 1, where `i` is read from `register` (first entry is
    /// the most significant bit).
    DiagonalOracle {
        register: Vec<usize>,
        phases: Vec<f64>,
        power: i64,
        controls: Vec<usize>,
    },
    Qft {
        register: Vec<usize>,
        inverse: bool,
    },
    Swap {
        a: usize,
        b: usize,
    },
}

impl Gate {
    pub fn czp(level: i32, qubits: impl Into<Vec<usize>>) -> Self {
        Gate::ControlledZPow {
            level,
            qubits: qubits.into(),
        }
    }

    pub fn ry(angle: f64, target: usize) -> Self {
        Gate::RotationY {
            angle,
            target,
            controls: Vec::new(),
        }
    }

    /// Every qubit the gate touches, controls included.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Hadamard { target } | Gate::PauliX { target } => alloc::vec![*target],
            Gate::RotationY {
                target, controls, ..
            } => core::iter::once(*target)
                .chain(controls.iter().copied())
                .collect(),
            Gate::ControlledZPow { qubits, .. } => qubits.clone(),
            Gate::DiagonalOracle {
                register, controls, ..
            } => register.iter().chain(controls).copied().collect(),
            Gate::Qft { register, .. } => register.clone(),
            Gate::Swap { a, b } => alloc::vec![*a, *b],
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if qubits.is_empty() {
            return Err(Error::EmptyQubitSet);
        }
        let mut seen = 0u128;
        for &q in &qubits {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits,
                });
            }
            if q < 128 {
                if seen & (1 << q) != 0 {
                    return Err(Error::DuplicateQubit(q));
                }
                seen |= 1 << q;
            } else if qubits.iter().filter(|&&r| r == q).count() > 1 {
                return Err(Error::DuplicateQubit(q));
            }
        }
        match self {
            Gate::ControlledZPow { level: 0, .. } => Err(Error::ZeroLevel),
            Gate::DiagonalOracle {
                register, phases, ..
            } => {
                if register.is_empty() {
                    return Err(Error::EmptyQubitSet);
                }
                let expected = 1usize << register.len();
                if phases.len() != expected {
                    return Err(Error::PhaseCountMismatch {
                        got: phases.len(),
                        expected,
                        register: register.len(),
                    });
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::RotationY {
                angle,
                target,
                controls,
            } => Gate::RotationY {
                angle: -angle,
                target: *target,
                controls: controls.clone(),
            },
            Gate::ControlledZPow { level, qubits } => Gate::ControlledZPow {
                level: -level,
                qubits: qubits.clone(),
            },
            Gate::DiagonalOracle {
                register,
                phases,
                power,
                controls,
            } => Gate::DiagonalOracle {
                register: register.clone(),
                phases: phases.clone(),
                power: -power,
                controls: controls.clone(),
            },
            Gate::Qft { register, inverse } => Gate::Qft {
                register: register.clone(),
                inverse: !inverse,
            },
            g => g.clone(),
        }
    }

    /// Relabels qubit `q` as `q + offset`.
    pub fn shifted(&self, offset: usize) -> Gate {
        let sh = |v: &Vec<usize>| v.iter().map(|q| q + offset).collect::<Vec<_>>();
        match self {
            Gate::Hadamard { target } => Gate::Hadamard {
                target: target + offset,
            },
            Gate::PauliX { target } => Gate::PauliX {
                target: target + offset,
            },
            Gate::RotationY {
                angle,
                target,
                controls,
            } => Gate::RotationY {
                angle: *angle,
                target: target + offset,
                controls: sh(controls),
            },
            Gate::ControlledZPow { level, qubits } => Gate::ControlledZPow {
                level: *level,
                qubits: sh(qubits),
            },
            Gate::DiagonalOracle {
                register,
                phases,
                power,
                controls,
            } => Gate::DiagonalOracle {
                register: sh(register),
                phases: phases.clone(),
                power: *power,
                controls: sh(controls),
            },
            Gate::Qft { register, inverse } => Gate::Qft {
                register: sh(register),
                inverse: *inverse,
            },
            Gate::Swap { a, b } => Gate::Swap {
                a: a + offset,
                b: b + offset,
            },
        }
    }
}

/// `e^{2πi·numerator/2^level}`, exact at quarter turns.
pub(crate) fn dyadic_unit(numerator: i64, level: u32) -> Complex64 {
    let denom = 1i128 << level;
    let p = (numerator as i128).rem_euclid(denom);
    // Exact values at multiples of a quarter turn.
    if (p * 4) % denom == 0 {
        return match (p * 4 / denom) as u8 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::cis(TAU * (p as f64) / (denom as f64))
}

fn czp_phase(level: i32) -> Complex64 {
    let sign = if level > 0 { 1 } else { -1 };
    dyadic_unit(sign, level.unsigned_abs())
}

impl StateVector {
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        let n = self.num_qubits();
        gate.validate(n)?;
        match gate {
            Gate::Hadamard { target } => {
                self.pairwise(*target, 0, |a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * FRAC_1_SQRT_2;
                    *b = (x - y) * FRAC_1_SQRT_2;
                });
            }
            Gate::PauliX { target } => self.pairwise(*target, 0, core::mem::swap),
            Gate::RotationY {
                angle,
                target,
                controls,
            } => {
                let (c, s) = (libm::cos(angle / 2.0), libm::sin(angle / 2.0));
                self.pairwise(*target, qubits_mask(controls, n), |a, b| {
                    let (x, y) = (*a, *b);
                    *a = x * c - y * s;
                    *b = x * s + y * c;
                });
            }
            Gate::ControlledZPow { level, qubits } => {
                let mask = qubits_mask(qubits, n);
                let phase = czp_phase(*level);
                for (i, a) in self.amplitudes_mut().iter_mut().enumerate() {
                    if i & mask == mask {
                        *a *= phase;
                    }
                }
            }
            Gate::DiagonalOracle {
                register,
                phases,
                power,
                controls,
            } => {
                let cmask = qubits_mask(controls, n);
                let factors: Vec<Complex64> = phases
                    .iter()
                    .map(|&phi| Complex64::cis(*power as f64 * phi))
                    .collect();
                for (i, a) in self.amplitudes_mut().iter_mut().enumerate() {
                    if i & cmask == cmask {
                        *a *= factors[gather_bits(i, register, n)];
                    }
                }
            }
            Gate::Qft { register, inverse } => {
                for g in qft_gates(register, *inverse) {
                    self.apply(&g)?;
                }
            }
            Gate::Swap { a, b } => {
                let (ma, mb) = (qubit_mask(*a, n), qubit_mask(*b, n));
                let amps = self.amplitudes_mut();
                for i in 0..amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        amps.swap(i, i ^ ma ^ mb);
                    }
                }
            }
        }
        Ok(())
    }

    /// Visits every amplitude pair differing only in `target`, restricted to
    /// indices where all bits of `control_mask` are set.
    fn pairwise(
        &mut self,
        target: usize,
        control_mask: usize,
        mut f: impl FnMut(&mut Complex64, &mut Complex64),
    ) {
        let tmask = qubit_mask(target, self.num_qubits());
        let amps = self.amplitudes_mut();
        for i in 0..amps.len() {
            if i & tmask == 0 && i & control_mask == control_mask {
                let (lo, hi) = amps.split_at_mut(i | tmask);
                f(&mut lo[i], &mut hi[0]);
            }
        }
    }
}

pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}
