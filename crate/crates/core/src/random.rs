//! Random generic arrangements for property tests and acceptance runs.

use alloc::vec::Vec;

use rand::Rng;

use crate::arrangement::{AffineForm, Arrangement};
use crate::Rational;

fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

/// A generic arrangement of `n` hyperplanes in `R^k` with small integer
/// coefficients and weights drawn uniformly from `[0.2, 0.8]`. Draws are
/// repeated until the result is generic.
pub fn random_generic_arrangement<R: Rng>(rng: &mut R, k: usize, n: usize) -> Arrangement {
    assert!(k >= 1 && n >= k, "need n >= k >= 1");
    loop {
        let mut forms = Vec::with_capacity(n);
        while forms.len() < n {
            let linear: Vec<Rational> = (0..k).map(|_| small_int(rng, 3)).collect();
            if linear.iter().all(|c| *c == Rational::from_integer(0.into())) {
                continue;
            }
            forms.push(AffineForm::new(linear, small_int(rng, 5)));
        }
        let f0: Vec<Rational> = (0..k).map(|_| small_int(rng, 7)).collect();
        let weights = (0..n).map(|_| rng.gen_range(0.2..0.8)).collect();
        if let Ok(arr) = Arrangement::generic(forms, weights, f0) {
            return arr;
        }
    }
}

/// `n` distinct sorted points with random rational coordinates in `[-5, 5]`.
pub fn random_points<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let mut pts: Vec<Rational> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Rational::new(rng.gen_range(-50i64..=50).into(), 10.into());
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts.sort();
    pts
}

/// Weights drawn uniformly from `[0.2, 0.8]`.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.2..0.8)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn draws_are_generic_and_reproducible() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (k, n) in [(1, 3), (2, 4), (3, 5)] {
            let x = random_generic_arrangement(&mut a, k, n);
            let y = random_generic_arrangement(&mut b, k, n);
            assert_eq!(x, y);
            assert!(x.validate_genericity().is_empty());
        }
    }
}
