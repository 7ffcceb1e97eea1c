//! Direction grids on the unit circle and sphere.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{cos, sin, sqrt, Dim, Vec3, TAU};

/// `n` equally spaced unit vectors at angles `2πk/n`.
pub fn circle_directions(n: usize) -> Vec<Vec3> {
    (0..n).map(|k| Vec3::from_angle(TAU * k as f64 / n as f64)).collect()
}

/// Uniformly random unit vectors from a seeded generator.
pub fn random_directions(dim: Dim, n: usize, seed: u64) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| match dim {
            Dim::Two => Vec3::from_angle(TAU * rng.random::<f64>()),
            Dim::Three => {
                let z = 2.0 * rng.random::<f64>() - 1.0;
                let phi = TAU * rng.random::<f64>();
                let r = sqrt((1.0 - z * z).max(0.0));
                Vec3::new(r * cos(phi), r * sin(phi), z)
            }
        })
        .collect()
}

/// Fibonacci lattice of `n` nearly uniform points on the sphere.
pub fn fibonacci_directions(n: usize) -> Vec<Vec3> {
    let golden = TAU * (1.0 - 1.0 / 1.618_033_988_749_895);
    (0..n)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
            let r = sqrt((1.0 - z * z).max(0.0));
            let phi = golden * k as f64;
            Vec3::new(r * cos(phi), r * sin(phi), z)
        })
        .collect()
}

/// A direction grid matching the dimension: equally spaced angles in the
/// plane, a Fibonacci lattice in space.
pub fn default_directions(dim: Dim, n: usize) -> Vec<Vec3> {
    match dim {
        Dim::Two => circle_directions(n),
        Dim::Three => fibonacci_directions(n),
    }
}
