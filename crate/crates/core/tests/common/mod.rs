#![allow(dead_code)]

use hypstokes::arrangement::{line_arrangement, triangle_arrangement};
use hypstokes::random::random_weights;
use hypstokes::{Arrangement, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points of the line instances with one, two and three hyperplanes.
pub fn line_points(n: usize) -> Vec<Rational> {
    [q(0, 1), q(1, 1), q(5, 2)][..n].to_vec()
}

pub fn line(n: usize, weights: Vec<f64>) -> Arrangement {
    line_arrangement(&line_points(n), weights).unwrap()
}

pub fn example2() -> Arrangement {
    triangle_arrangement(q(2, 1), q(1, 1), vec![0.3, 0.4, 0.5]).unwrap()
}

/// The verification instances: lines with `N = 1, 2, 3` and seeded random
/// weights in `[0.2, 0.8]`, and the triangle with `(a, b) = (2, 1)`.
pub fn verification_instances(seed: u64) -> Vec<Arrangement> {
    let mut r = rng(seed);
    let mut out: Vec<Arrangement> = (1..=3).map(|n| line(n, random_weights(&mut r, n))).collect();
    out.push(example2());
    out
}
