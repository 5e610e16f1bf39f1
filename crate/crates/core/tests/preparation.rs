mod common;

use common::*;
use qprep_core::analysis::{amplitude_bound, state_distance, success_lower_bound};
use qprep_core::diag::{quantize, reconstruct_gates};
use qprep_core::prep::{
    build, build_phase_stage, execute, execute_amplitude_stage, fast_path, fast_path_prepare,
    phase_estimation_gates, required_precision, Mode, PrecisionConfig, TargetVector,
};
use qprep_core::sim::{Circuit, Gate, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn phase_estimation_reads_exact_dyadics() {
    let mut r = rng(1);
    for _ in 0..20 {
        let n = r.random_range(1..=2);
        let t = r.random_range(1..=5);
        let q = t + n;
        let ys: Vec<usize> = (0..1usize << n)
            .map(|_| r.random_range(0..1usize << t))
            .collect();
        let phases: Vec<f64> = ys
            .iter()
            .map(|&y| TAU * y as f64 / (1u64 << t) as f64)
            .collect();
        let pe: Vec<usize> = (0..t).collect();
        let data: Vec<usize> = (t..q).collect();
        let gates = phase_estimation_gates(&pe, &data, &phases);
        let circuit = Circuit::from_gates(q, gates).unwrap();
        for (i, &y) in ys.iter().enumerate() {
            let mut s = StateVector::basis(q, i).unwrap();
            circuit.apply_to(&mut s).unwrap();
            let amp = s.amplitudes()[(y << n) | i];
            assert!(
                (amp.norm() - 1.0).abs() < 1e-10,
                "t={t} y={y} |amp|={}",
                amp.norm()
            );
            circuit.inverse().apply_to(&mut s).unwrap();
            assert!((s.amplitudes()[i].norm() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn deterministic_amplitude_bound() {
    let mut r = rng(2);
    for _ in 0..10 {
        for n in [2usize, 3] {
            for t in [6u32, 8, 10] {
                let x = random_target(&mut r, n);
                let cfg = PrecisionConfig::deterministic(t, 8);
                let prepared = execute_amplitude_stage(&build(&x, &cfg).unwrap()).unwrap();
                let d = state_distance(&x.real_state(), &prepared.state).unwrap();
                assert!(
                    d <= amplitude_bound(n, t, Mode::Deterministic) + 1e-12,
                    "n={n} t={t} d={d}"
                );
                assert!(prepared.pe_residual < 1e-10);
            }
        }
    }
}

#[test]
fn probabilistic_success_and_distance_bounds() {
    let mut r = rng(3);
    for _ in 0..5 {
        for n in [2usize, 3] {
            for eps in [0.5, 0.1] {
                let t = 2 * n as u32 + (PI / eps).log2().ceil() as u32;
                let x = random_target(&mut r, n);
                let cfg = PrecisionConfig::probabilistic(t, 8);
                let prepared = execute_amplitude_stage(&build(&x, &cfg).unwrap()).unwrap();
                assert!(prepared.success_probability >= success_lower_bound(&x) - 1e-12);
                let d = state_distance(&x.real_state(), &prepared.state).unwrap();
                assert!(d <= eps, "n={n} eps={eps} d={d}");
                assert!(d <= amplitude_bound(n, t, Mode::Probabilistic) + 1e-12);
            }
        }
    }
}

#[test]
fn end_to_end_with_required_precision() {
    let mut r = rng(4);
    for mode in [Mode::Deterministic, Mode::Probabilistic] {
        for n in [2usize, 3] {
            for eps in [0.5, 0.1] {
                let cfg = required_precision(n, eps, mode).unwrap();
                for _ in 0..3 {
                    let x = random_target(&mut r, n);
                    let prepared = execute(&build(&x, &cfg).unwrap()).unwrap();
                    let d = state_distance(&x.state(), &prepared.state).unwrap();
                    assert!(d <= eps, "{mode} n={n} eps={eps} d={d}");
                }
            }
        }
    }
}

#[test]
fn fast_path_matches_full_circuit() {
    let mut r = rng(5);
    for _ in 0..10 {
        let n = r.random_range(1..=3);
        let t = r.random_range(3..=8);
        let t_prime = r.random_range(1..=8);
        let x = random_target(&mut r, n);
        for cfg in [
            PrecisionConfig::deterministic(t, t_prime),
            PrecisionConfig::probabilistic(t, t_prime),
        ] {
            let full = execute(&build(&x, &cfg).unwrap()).unwrap();
            let (fast, p) = fast_path(&x, &cfg, true).unwrap();
            assert!(max_diff(full.state.amplitudes(), fast.amplitudes()) < 1e-9);
            assert!((full.success_probability - p).abs() < 1e-9);
            assert!(full.pe_residual < 1e-10);
        }
    }
}

#[test]
fn zero_components_are_supported() {
    let vectors = [
        vec![0.0, 1.0, 0.0, 2.0],
        vec![0.0, 0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.5],
        vec![0.0, 0.0, 0.0, 0.0, 2.0, 1.0, 0.0, 0.0],
    ];
    for mags in vectors {
        let x = TargetVector::real(mags).unwrap();
        for mode in [Mode::Deterministic, Mode::Probabilistic] {
            let cfg = required_precision(x.num_qubits(), 0.1, mode).unwrap();
            let prepared = execute(&build(&x, &cfg).unwrap()).unwrap();
            let d = state_distance(&x.state(), &prepared.state).unwrap();
            assert!(d <= 0.1, "{mode} d={d}");
            if mode == Mode::Probabilistic {
                assert!(prepared.success_probability >= success_lower_bound(&x) - 1e-12);
            }
        }
    }
}

#[test]
fn basis_vectors_are_exact() {
    for i in 0..8 {
        let mut mags = vec![0.0; 8];
        mags[i] = 1.0;
        let x = TargetVector::real(mags).unwrap();
        let cfg = required_precision(3, 0.1, Mode::Deterministic).unwrap();
        let prepared = execute(&build(&x, &cfg).unwrap()).unwrap();
        assert!(state_distance(&x.state(), &prepared.state).unwrap() < 1e-12);
        let fast = fast_path_prepare(&x, &cfg).unwrap();
        assert!(state_distance(&x.state(), &fast).unwrap() < 1e-12);
    }
}

#[test]
fn probabilistic_basis_vectors_within_bound() {
    // 4·(π/2) sits on the top grid point, so zeros come out as tiny cosines.
    for i in 0..4 {
        let mut mags = vec![0.0; 4];
        mags[i] = 1.0;
        let x = TargetVector::real(mags).unwrap();
        let cfg = PrecisionConfig::probabilistic(8, 4);
        let prepared = execute(&build(&x, &cfg).unwrap()).unwrap();
        let d = state_distance(&x.state(), &prepared.state).unwrap();
        assert!(d <= amplitude_bound(2, 8, Mode::Probabilistic));
        assert!(prepared.success_probability >= 0.25 - 1e-12);
    }
}

#[test]
fn single_qubit_uniform_is_one_rotation() {
    let x = TargetVector::real(vec![1.0, 1.0]).unwrap();
    let result = build(&x, &PrecisionConfig::deterministic(4, 4)).unwrap();
    let stage = result.amplitude_stage();
    assert_eq!(stage.len(), 1);
    match &stage.gates()[0] {
        Gate::RotationY {
            angle, controls, ..
        } => {
            assert!((angle - PI / 2.0).abs() < 1e-12);
            assert!(controls.is_empty());
        }
        g => panic!("unexpected {g:?}"),
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let prepared = execute(&result).unwrap();
    assert!(max_diff(prepared.state.amplitudes(), &[c(s, 0.0), c(s, 0.0)]) < 1e-12);
}

#[test]
fn two_qubit_deterministic_example() {
    let x = TargetVector::real(vec![
        0.1f64.sqrt(),
        0.2f64.sqrt(),
        0.3f64.sqrt(),
        0.4f64.sqrt(),
    ])
    .unwrap();
    let prepared =
        execute_amplitude_stage(&build(&x, &PrecisionConfig::deterministic(10, 8)).unwrap())
            .unwrap();
    let d = state_distance(&x.real_state(), &prepared.state).unwrap();
    let bound = 2f64.sqrt() * PI / 512.0;
    assert!((bound - 8.68e-3).abs() < 1e-5);
    assert!(d <= bound, "d={d}");
}

#[test]
fn uniform_probabilistic_is_hadamard_layer() {
    let x = TargetVector::real(vec![1.0; 8]).unwrap();
    let prepared = execute(&build(&x, &PrecisionConfig::probabilistic(6, 4)).unwrap()).unwrap();
    assert!((prepared.success_probability - 1.0).abs() < 1e-12);
    let h = 1.0 / 8f64.sqrt();
    assert!(max_diff(prepared.state.amplitudes(), &[c(h, 0.0); 8]) < 1e-12);
}

#[test]
fn three_four_success_probability() {
    let x = TargetVector::real(vec![3.0, 4.0]).unwrap();
    // 25/(2·16) by direct evaluation of ‖x‖²/(2^n·max x²).
    assert_eq!(success_lower_bound(&x), 25.0 / 32.0);
    let result = build(&x, &PrecisionConfig::probabilistic(14, 4)).unwrap();
    let p = execute(&result).unwrap().success_probability;
    assert!(p >= 25.0 / 32.0 - 1e-12);
    assert!((p - 25.0 / 32.0).abs() < 1e-4, "p={p}");
    assert!((result.expected_success_probability - p).abs() < 1e-10);
}

#[test]
fn probabilistic_four_entry_example() {
    let x = TargetVector::real(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
    let t = 12;
    let prepared =
        execute_amplitude_stage(&build(&x, &PrecisionConfig::probabilistic(t, 4)).unwrap())
            .unwrap();
    let d = state_distance(&x.real_state(), &prepared.state).unwrap();
    assert!(d <= 32.0 * PI / 8192.0, "d={d}");
}

#[test]
fn phase_stage_examples() {
    let zeros = TargetVector::new(vec![1.0; 4], vec![0.0; 4]).unwrap();
    assert!(build_phase_stage(&zeros, 6).unwrap().is_empty());

    let z = TargetVector::new(vec![1.0, 1.0], vec![0.0, PI]).unwrap();
    assert_eq!(
        build_phase_stage(&z, 1).unwrap().gates(),
        &[Gate::czp(1, vec![0])]
    );

    let theta = [0.0, PI / 3.0, 0.0, 0.0];
    let x = TargetVector::new(vec![1.0; 4], theta.to_vec()).unwrap();
    let circuit = build_phase_stage(&x, 8).unwrap();
    let nums = reconstruct_gates(circuit.gates(), 2, 8).unwrap();
    for (p, target) in nums.iter().zip(theta) {
        let got = TAU * *p as f64 / 256.0;
        assert!((got - target).abs() < TAU / 256.0);
    }
    assert_eq!(nums, quantize(&theta, 8).unwrap().numerators());
}

#[test]
fn deterministic_multiplier_four_rejects_right_angles() {
    let x = TargetVector::real(vec![0.0, 1.0]).unwrap();
    let mut cfg = PrecisionConfig::deterministic(6, 4);
    cfg.angle_multiplier = 4;
    assert!(build(&x, &cfg).is_ok());
    let x = TargetVector::real(vec![1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
    assert!(build(&x, &cfg).is_err());
}
