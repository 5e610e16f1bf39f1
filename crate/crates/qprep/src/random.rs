//! Seeded random target vectors.

use std::f64::consts::TAU;

use qprep_core::prep::TargetVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Magnitudes `|N(0, 1)|`, phases uniform on `[0, 2π)`, drawn from a
/// ChaCha8 stream seeded with `seed`.
pub fn random_vector(n: usize, seed: u64) -> TargetVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 1usize << n;
    loop {
        let mags: Vec<f64> = (0..len)
            .map(|_| rng.sample::<f64, _>(StandardNormal).abs())
            .collect();
        let phases: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..TAU)).collect();
        if let Ok(x) = TargetVector::new(mags, phases) {
            return x;
        }
    }
}

/// Seed of the `index`-th vector of a batch started from `base`.
pub fn batch_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add(index as u64)
}

/// `count` vectors with their seeds.
pub fn random_batch(n: usize, count: usize, base: u64) -> Vec<(TargetVector, u64)> {
    (0..count)
        .map(|i| {
            let seed = batch_seed(base, i);
            (random_vector(n, seed), seed)
        })
        .collect()
}
