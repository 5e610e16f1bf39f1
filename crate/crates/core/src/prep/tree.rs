use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::{Mode, PrecisionConfig, TargetVector};
use crate::diag::DyadicPhase;
use crate::{Error, Result};

/// Conditional probabilities with a parent below this are treated as zero.
const DEGENERATE: f64 = 1e-300;

/// Marginal probabilities over bit prefixes: level `k` holds `2^k` entries,
/// `p^n_i = x_i²/‖x‖²` and `p^k_i = p^{k+1}_{2i} + p^{k+1}_{2i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalTree {
    levels: Vec<Vec<f64>>,
}

impl MarginalTree {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level `k` for `1 ≤ k ≤ n`.
    pub fn level(&self, k: usize) -> &[f64] {
        &self.levels[k - 1]
    }
}

pub fn compute_marginals(x: &TargetVector) -> MarginalTree {
    let n = x.num_qubits();
    let norm_sqr = x.norm_sqr();
    let mut levels = Vec::with_capacity(n);
    levels.push(
        x.magnitudes()
            .iter()
            .map(|m| m * m / norm_sqr)
            .collect::<Vec<f64>>(),
    );
    for _ in 1..n {
        let child = levels.last().unwrap();
        let parent = child.chunks_exact(2).map(|c| c[0] + c[1]).collect();
        levels.push(parent);
    }
    levels.reverse();
    MarginalTree { levels }
}

/// Rotation angles for both preparation modes, exact and quantized.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleTable {
    /// `α⁰₀ = arccos √p¹₀`, used unquantized for the first data qubit.
    pub root: f64,
    /// `α^k_j = arccos √(p^{k+1}_{2j}/p^k_j)` for `k = 1…n−1`; entry `k − 1`
    /// has `2^k` angles.
    pub conditional: Vec<Vec<f64>>,
    /// Phase-estimation readouts `y` with `2π·y/2^t = ⌊c·α^k_j⌋_t`, as
    /// dyadic phases at level `t`. These are the oracle phases.
    pub conditional_readout: Vec<Vec<DyadicPhase>>,
    /// `α_i = arccos(x_i / max x)`.
    pub ratio: Vec<f64>,
    /// Readouts of `4·α_i` at level `t`.
    pub ratio_readout: Vec<DyadicPhase>,
    /// Multiplier `c` used for `conditional_readout`.
    pub multiplier: u32,
    pub t: u32,
}

impl AngleTable {
    /// `ᾱ = (2π/2^t)·y/c`.
    pub fn dequantize(readout: DyadicPhase, multiplier: u32) -> f64 {
        readout.radians() / multiplier as f64
    }

    pub fn quantized_conditional(&self, k: usize) -> Vec<f64> {
        self.conditional_readout[k - 1]
            .iter()
            .map(|&y| Self::dequantize(y, self.multiplier))
            .collect()
    }

    pub fn quantized_ratio(&self) -> Vec<f64> {
        self.ratio_readout
            .iter()
            .map(|&y| Self::dequantize(y, 4))
            .collect()
    }
}

fn safe_acos(v: f64) -> f64 {
    libm::acos(v.clamp(0.0, 1.0))
}

/// Fills the angle table. Conditional readouts use `cfg.angle_multiplier` in
/// deterministic mode and 2 otherwise; ratio readouts always encode `4α`.
pub fn compute_angles(
    tree: &MarginalTree,
    x: &TargetVector,
    cfg: &PrecisionConfig,
) -> Result<AngleTable> {
    let n = x.num_qubits();
    if tree.depth() != n {
        return Err(Error::InvalidTarget(alloc::format!(
            "marginal tree has depth {}, target has {n} qubits",
            tree.depth()
        )));
    }
    cfg.validate()?;
    let t = cfg.t;
    let c = match cfg.mode {
        Mode::Deterministic => cfg.angle_multiplier,
        Mode::Probabilistic => 2,
    };

    let root = safe_acos(libm::sqrt(tree.level(1)[0]));

    let mut conditional = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let parent = tree.level(k);
        let child = tree.level(k + 1);
        let angles: Vec<f64> = parent
            .iter()
            .enumerate()
            .map(|(j, &p)| {
                if p <= DEGENERATE {
                    0.0
                } else {
                    safe_acos(libm::sqrt(child[2 * j] / p))
                }
            })
            .collect();
        conditional.push(angles);
    }

    let conditional_readout = conditional
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|&a| {
                    let scaled = c as f64 * a;
                    if scaled >= TAU {
                        return Err(Error::InvalidConfig(alloc::format!(
                            "multiplier {c} cannot encode α = {a}: c·α reaches 2π"
                        )));
                    }
                    DyadicPhase::floor(scaled, t)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let max = x.max_magnitude();
    let ratio: Vec<f64> = x.magnitudes().iter().map(|&m| safe_acos(m / max)).collect();
    // 4·(π/2) = 2π lands on the top grid point.
    let ratio_readout = ratio
        .iter()
        .map(|&a| DyadicPhase::floor(4.0 * a, t))
        .collect::<Result<Vec<_>>>()?;

    Ok(AngleTable {
        root,
        conditional,
        conditional_readout,
        ratio,
        ratio_readout,
        multiplier: c,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_4;

    fn det(t: u32) -> PrecisionConfig {
        PrecisionConfig::deterministic(t, 4)
    }

    #[test]
    fn uniform_marginals() {
        let x = TargetVector::real(alloc::vec![1.0; 4]).unwrap();
        let tree = compute_marginals(&x);
        assert_eq!(tree.level(2), &[0.25; 4]);
        assert_eq!(tree.level(1), &[0.5; 2]);
    }

    #[test]
    fn basis_marginals() {
        let x = TargetVector::real(alloc::vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let tree = compute_marginals(&x);
        assert_eq!(tree.level(1), &[1.0, 0.0]);
        assert_eq!(tree.level(2), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn sqrt_weights() {
        let x = TargetVector::real(
            [1.0f64, 2.0, 3.0, 4.0]
                .iter()
                .map(|v| v.sqrt() / 10f64.sqrt())
                .collect(),
        )
        .unwrap();
        let tree = compute_marginals(&x);
        assert!((tree.level(1)[0] - 0.3).abs() < 1e-15);
        assert!((tree.level(1)[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn uniform_angles_are_quarter_pi() {
        let x = TargetVector::real(alloc::vec![1.0; 8]).unwrap();
        let a = compute_angles(&compute_marginals(&x), &x, &det(6)).unwrap();
        assert!((a.root - FRAC_PI_4).abs() < 1e-15);
        for level in &a.conditional {
            for &v in level {
                assert!((v - FRAC_PI_4).abs() < 1e-15);
            }
        }
        // 2·π/4 = π/2 is on the 6-bit grid: y = 16.
        assert!(a.conditional_readout[0].iter().all(|y| y.numerator() == 16));
    }

    #[test]
    fn basis_vector_angles() {
        let x = TargetVector::real(alloc::vec![1.0, 0.0]).unwrap();
        let a = compute_angles(&compute_marginals(&x), &x, &det(4)).unwrap();
        assert_eq!(a.root, 0.0);
    }

    #[test]
    fn ratio_angles() {
        let x = TargetVector::real(alloc::vec![3.0, 4.0]).unwrap();
        let a = compute_angles(&compute_marginals(&x), &x, &det(4)).unwrap();
        assert!((a.ratio[0] - (0.75f64).acos()).abs() < 1e-15);
        assert_eq!(a.ratio[1], 0.0);
    }

    #[test]
    fn zero_branches() {
        let x = TargetVector::real(alloc::vec![0.0, 0.0, 1.0, 2.0]).unwrap();
        let a = compute_angles(&compute_marginals(&x), &x, &det(5)).unwrap();
        assert_eq!(a.conditional[0][0], 0.0);
        // zero magnitude: 4·(π/2) wraps to the top of the grid
        assert_eq!(a.ratio_readout[0].numerator(), 31);
    }

    #[test]
    fn multiplier_four_rejects_half_pi() {
        // p²_2 = 0 while p¹_1 > 0 gives α¹_1 = π/2
        let x = TargetVector::real(alloc::vec![1.0, 1.0, 0.0, 1.0]).unwrap();
        let mut cfg = det(5);
        cfg.angle_multiplier = 4;
        assert!(matches!(
            compute_angles(&compute_marginals(&x), &x, &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }
}
