#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use qprep_core::prep::TargetVector;
use qprep_core::sim::{Gate, StateVector};
use rand::Rng;
use std::f64::consts::{PI, TAU};

pub type Matrix = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_state<R: Rng>(rng: &mut R, q: usize) -> StateVector {
    let amps = (0..1usize << q)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(amps).unwrap()
}

pub fn random_target<R: Rng>(rng: &mut R, n: usize) -> TargetVector {
    let len = 1usize << n;
    let mags = (0..len).map(|_| rng.random_range(0.05..1.0)).collect();
    let phases = (0..len).map(|_| rng.random_range(0.0..TAU)).collect();
    TargetVector::new(mags, phases).unwrap()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn bit(index: usize, qubit: usize, q: usize) -> usize {
    (index >> (q - 1 - qubit)) & 1
}

fn all_set(index: usize, qubits: &[usize], q: usize) -> bool {
    qubits.iter().all(|&k| bit(index, k, q) == 1)
}

fn read(index: usize, register: &[usize], q: usize) -> usize {
    register
        .iter()
        .fold(0, |acc, &k| acc * 2 + bit(index, k, q))
}

fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| c((i == j) as u8 as f64, 0.0)).collect())
        .collect()
}

/// Entry `(row, col)` of a controlled single-qubit gate built elementwise.
fn single_qubit(u: [[Complex64; 2]; 2], target: usize, controls: &[usize], q: usize) -> Matrix {
    let dim = 1usize << q;
    let tmask = 1usize << (q - 1 - target);
    let mut m = identity(dim);
    for col in 0..dim {
        if !all_set(col, controls, q) {
            continue;
        }
        for row in [col & !tmask, col | tmask] {
            m[row][col] = u[bit(row, target, q)][bit(col, target, q)];
        }
    }
    m
}

/// Dense unitary of `gate` on `q` qubits, built from the gate definitions
/// alone.
pub fn dense(gate: &Gate, q: usize) -> Matrix {
    let dim = 1usize << q;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match gate {
        Gate::Hadamard { target } => single_qubit(
            [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
            *target,
            &[],
            q,
        ),
        Gate::PauliX { target } => single_qubit(
            [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            *target,
            &[],
            q,
        ),
        Gate::RotationY {
            angle,
            target,
            controls,
        } => {
            let (co, si) = ((angle / 2.0).cos(), (angle / 2.0).sin());
            single_qubit(
                [[c(co, 0.0), c(-si, 0.0)], [c(si, 0.0), c(co, 0.0)]],
                *target,
                controls,
                q,
            )
        }
        Gate::ControlledZPow { level, qubits } => {
            let phase = level.signum() as f64 * TAU / 2f64.powi(level.abs());
            let mut m = identity(dim);
            for i in 0..dim {
                if all_set(i, qubits, q) {
                    m[i][i] = Complex64::cis(phase);
                }
            }
            m
        }
        Gate::DiagonalOracle {
            register,
            phases,
            power,
            controls,
        } => {
            let mut m = identity(dim);
            for i in 0..dim {
                if all_set(i, controls, q) {
                    m[i][i] = Complex64::cis(*power as f64 * phases[read(i, register, q)]);
                }
            }
            m
        }
        Gate::Qft { register, inverse } => dft(register, *inverse, q),
        Gate::Swap { a, b } => {
            let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
            for col in 0..dim {
                let (ba, bb) = (bit(col, *a, q), bit(col, *b, q));
                let mut row = col;
                if ba != bb {
                    row ^= (1 << (q - 1 - a)) | (1 << (q - 1 - b));
                }
                m[row][col] = c(1.0, 0.0);
            }
            m
        }
    }
}

/// Direct-summation DFT `|j⟩ ↦ 2^{-t/2} Σ_k e^{±2πi jk/2^t}|k⟩` on `register`.
pub fn dft(register: &[usize], inverse: bool, q: usize) -> Matrix {
    let dim = 1usize << q;
    let size = 1usize << register.len();
    let sign = if inverse { -1.0 } else { 1.0 };
    let rmask: usize = register.iter().map(|&k| 1usize << (q - 1 - k)).sum();
    let scale = 1.0 / (size as f64).sqrt();
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        for row in 0..dim {
            if row & !rmask != col & !rmask {
                continue;
            }
            let (j, k) = (read(col, register, q), read(row, register, q));
            m[row][col] = Complex64::cis(sign * 2.0 * PI * (j * k) as f64 / size as f64) * scale;
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn matvec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn max_matrix_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| max_diff(x, y))
        .fold(0.0, f64::max)
}
