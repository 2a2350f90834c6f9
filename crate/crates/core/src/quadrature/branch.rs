//! Continuous determination of `w^α` along a sampled path.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::Error;

/// Samples of a path in `C \ {0}` with the argument of the first sample
/// fixed by `start_arg`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchPath {
    pub samples: Vec<Complex64>,
    pub exponent: f64,
    /// Argument assigned to the first sample (must agree with it modulo `2π`).
    pub start_arg: f64,
}

impl BranchPath {
    /// Path starting on the principal branch.
    pub fn principal(samples: Vec<Complex64>, exponent: f64) -> Self {
        let start_arg = samples.first().map_or(0.0, |w| w.arg());
        Self { samples, exponent, start_arg }
    }
}

const MAX_DEPTH: u32 = 40;

/// Accumulated change of argument along the straight segment `a → b`,
/// bisecting until every step turns by less than `π/2`.
fn segment_turn(a: Complex64, b: Complex64, depth: u32) -> Result<f64, Error> {
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::Branch("path passes through zero".into()));
    }
    let step = (b / a).arg();
    if step.abs() < FRAC_PI_2 {
        return Ok(step);
    }
    if depth == 0 {
        return Err(Error::Branch("argument step stays above π/2 after refinement".into()));
    }
    let mid = (a + b) * 0.5;
    Ok(segment_turn(a, mid, depth - 1)? + segment_turn(mid, b, depth - 1)?)
}

/// Total argument change along the path, refining coarse steps on the
/// straight segment between consecutive samples.
pub fn accumulated_arg(path: &BranchPath) -> Result<f64, Error> {
    let first = *path.samples.first().ok_or_else(|| Error::Branch("empty path".into()))?;
    if first.norm() == 0.0 {
        return Err(Error::Branch("path starts at zero".into()));
    }
    let offset = path.start_arg - first.arg();
    let turns = offset / (2.0 * PI);
    if (turns - libm::round(turns)).abs() > 1e-9 {
        return Err(Error::Branch("start argument does not match the first sample".into()));
    }
    let mut arg = path.start_arg;
    for w in path.samples.windows(2) {
        arg += segment_turn(w[0], w[1], MAX_DEPTH)?;
    }
    Ok(arg)
}

/// `w_end^α` on the branch reached by continuation along the path.
pub fn continue_branch(path: &BranchPath) -> Result<Complex64, Error> {
    let arg = accumulated_arg(path)?;
    let end = *path.samples.last().expect("nonempty path");
    let modulus = libm::pow(end.norm(), path.exponent);
    let (s, c) = libm::sincos(path.exponent * arg);
    Ok(Complex64::new(c, s) * modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn circle(n: usize, turns: f64) -> Vec<Complex64> {
        (0..=n).map(|i| Complex64::from_polar(2.0, turns * 2.0 * PI * i as f64 / n as f64)).collect()
    }

    #[test]
    fn constant_path() {
        let p = BranchPath::principal(vec![Complex64::new(1.0, 0.0); 4], 0.37);
        assert!((continue_branch(&p).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn full_loop_picks_up_monodromy() {
        let alpha = 0.3;
        let p = BranchPath::principal(circle(3, 1.0), alpha);
        let principal = Complex64::new(2.0, 0.0).powf(alpha);
        let expected = principal * Complex64::new(0.0, 2.0 * PI * alpha).exp();
        assert!((continue_branch(&p).unwrap() - expected).norm() < 1e-13);
    }

    #[test]
    fn half_loop_over_a_zero() {
        // Counterclockwise from +1 to -1 through the upper half plane.
        let alpha = 0.45;
        let samples: Vec<Complex64> = (0..=8).map(|i| Complex64::from_polar(1.0, PI * i as f64 / 8.0)).collect();
        let p = BranchPath::principal(samples, alpha);
        let expected = Complex64::new(0.0, PI * alpha).exp();
        assert!((continue_branch(&p).unwrap() - expected).norm() < 1e-13);
    }

    #[test]
    fn coarse_steps_are_refined_and_zero_is_rejected() {
        let p = BranchPath::principal(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 1e-3)], 0.5);
        assert!(continue_branch(&p).is_ok());
        let bad = BranchPath::principal(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)], 0.5);
        assert!(continue_branch(&bad).is_err());
        let mismatch = BranchPath { samples: vec![Complex64::new(1.0, 0.0)], exponent: 0.5, start_arg: 1.0 };
        assert!(continue_branch(&mismatch).is_err());
    }
}
