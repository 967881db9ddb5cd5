//! Seeded pseudo-random samples.
//!
//! All samples come from `ChaCha8Rng::seed_from_u64(seed)`, whose stream is fixed across
//! platforms and crate versions, so reports built from them are reproducible.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{lit, Real};

pub const DEFAULT_SEED: u64 = 42;

/// `count` points uniformly distributed (by area) in the closed disk of the given radius about 0.
pub fn disk_samples<T: Real>(seed: u64, count: usize, radius: f64) -> Vec<Complex<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            let v: f64 = rng.gen();
            let r = radius * u.sqrt();
            let angle = std::f64::consts::TAU * v;
            Complex::new(lit(r * angle.cos()), lit(r * angle.sin()))
        })
        .collect()
}
