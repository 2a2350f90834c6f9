//! Phase systems `eta`, `psi`, `nu`, `theta`, pair classification and the
//! characteristic-function identity for `Delta_X`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::geometry::{separating_set, Analysis, ConeStatus, Geometry};
use crate::Error;

/// `sign * exp(pi i sum_j n_j alpha_j)` with integer multiplicities `n_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseCoefficient {
    pub sign: i8,
    pub phase_weights: Vec<i32>,
}

impl PhaseCoefficient {
    pub fn one(n: usize) -> Self {
        Self { sign: 1, phase_weights: vec![0; n] }
    }

    /// `sign * exp(pi i alpha_set)`.
    pub fn from_set(n: usize, set: &[usize], sign: i8) -> Self {
        let mut phase_weights = vec![0; n];
        for &j in set {
            phase_weights[j] += 1;
        }
        Self { sign, phase_weights }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            sign: self.sign * other.sign,
            phase_weights: self.phase_weights.iter().zip(&other.phase_weights).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self { sign: self.sign, phase_weights: self.phase_weights.iter().map(|n| -n).collect() }
    }

    pub fn as_complex(&self, weights: &[f64]) -> Complex64 {
        let phase: f64 = self.phase_weights.iter().zip(weights).map(|(&n, a)| n as f64 * a).sum();
        let (s, c) = libm::sincos(core::f64::consts::PI * phase);
        Complex64::new(c, s) * f64::from(self.sign)
    }
}

/// `eta(X, Delta)` for `Delta` inside `C+_X`.
pub fn eta(g: &Geometry, x: usize, c: usize) -> Result<PhaseCoefficient, Error> {
    if !g.chamber_in_cone(x, c) {
        return Err(Error::Domain("eta needs a chamber inside the cone of the vertex".into()));
    }
    let sep = separating_set(g.chamber(c), g.chamber(g.delta(x)));
    Ok(PhaseCoefficient::from_set(g.arrangement().len(), &sep, 1))
}

/// `psi(Delta, X)` for `X` on the closure of `Delta`.
pub fn psi(g: &Geometry, c: usize, x: usize) -> Result<PhaseCoefficient, Error> {
    if !g.on_boundary(x, c) {
        return Err(Error::Domain("psi needs a vertex on the chamber closure".into()));
    }
    let sep = separating_set(g.chamber(c), g.chamber(g.delta(x)));
    let sign = if sep.len() % 2 == 0 { 1 } else { -1 };
    Ok(PhaseCoefficient::from_set(g.arrangement().len(), &sep, sign))
}

/// `nu(Delta, X')`: zero off the closure, else the parity of the separating set.
pub fn nu(g: &Geometry, c: usize, x: usize) -> i8 {
    if !g.on_boundary(x, c) {
        return 0;
    }
    let sep = separating_set(g.chamber(c), g.chamber(g.delta(x)));
    if sep.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `theta(X', Delta)`: one when the chamber lies in `C+_{X'}`.
pub fn theta(g: &Geometry, x: usize, c: usize) -> i8 {
    i8::from(g.chamber_in_cone(x, c))
}

/// The exact product `sum_Delta theta(X', Delta) nu(Delta, X'')` over
/// `D+_X = {Delta in D+ : X(Delta) >= X}`, rows and columns indexed by the
/// vertices `X', X'' >= X`.
pub fn theta_nu_product(g: &Geometry, x: usize) -> Vec<Vec<i64>> {
    let m = g.vertices().len();
    let chambers: Vec<usize> = (x..m).map(|y| g.delta(y)).collect();
    (x..m)
        .map(|xp| {
            (x..m)
                .map(|xpp| {
                    chambers
                        .iter()
                        .map(|&c| i64::from(theta(g, xp, c)) * i64::from(nu(g, c, xpp)))
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Exceptional flags and the sets `A`, `B` for an ordered vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClassification {
    pub positive_exceptional: bool,
    pub negative_exceptional: bool,
    /// Hyperplanes through `X'` not separating `Delta_{X'}` from `Delta_X`
    /// (positive problem).
    pub exceptional_hyperplanes: Vec<usize>,
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
}

/// Positive-exceptional test in a single geometry, returning the flag and
/// the offending hyperplanes.
fn exceptional_in(g: &Geometry, x: usize, xp: usize) -> (bool, Vec<usize>) {
    match g.cone_membership(x, xp, 1).status {
        ConeStatus::Outside => (true, Vec::new()),
        ConeStatus::Boundary => (false, Vec::new()),
        ConeStatus::Interior => {
            let a = &g.chamber(g.delta(x)).signs;
            let b = &g.chamber(g.delta(xp)).signs;
            let bad: Vec<usize> = g.vertex(xp).indices.iter().copied().filter(|&j| a[j] == b[j]).collect();
            (!bad.is_empty(), bad)
        }
    }
}

/// `B` computed from the cones of one geometry.
fn set_b_in(g: &Geometry, x: usize, xp: usize) -> Vec<usize> {
    let vx = g.vertex(x);
    let vy = g.vertex(xp);
    vx.indices
        .iter()
        .enumerate()
        .filter_map(|(i, &j)| {
            let pos = vy.indices.iter().position(|&r| r == j)?;
            (g.cone_sign(x, i) != g.cone_sign(xp, pos)).then_some(j)
        })
        .collect()
}

/// `B` recomputed from the `C-` cones (through the reflected problem).
pub fn set_b_minus(an: &Analysis, x: usize, xp: usize) -> Vec<usize> {
    set_b_in(&an.minus, an.minus_index(x), an.minus_index(xp))
}

pub fn classify_pair(an: &Analysis, x: usize, xp: usize) -> PairClassification {
    let g = &an.plus;
    let (positive_exceptional, exceptional_hyperplanes) = exceptional_in(g, x, xp);
    let (negative_exceptional, _) = exceptional_in(&an.minus, an.minus_index(x), an.minus_index(xp));
    let sx = g.vertex_signs(x);
    let sy = g.vertex_signs(xp);
    let set_a = (0..sx.len()).filter(|&j| sx[j] * sy[j] < 0).collect();
    let set_b = set_b_in(g, x, xp);
    PairClassification { positive_exceptional, negative_exceptional, exceptional_hyperplanes, set_a, set_b }
}

/// Outcome of one sample of the characteristic-function identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointOutcome {
    Pass,
    Fail { lhs: i64, rhs: i64 },
    OnHyperplane(usize),
}

/// Sign tolerance for floating-point samples.
pub const SIGN_TOL: f64 = 1e-9;

/// Evaluates `chi_{Delta_X}(p) = sum_{X' on closure(Delta_X)} nu(Delta_X, X') chi_{C+_{X'}}(p)`
/// at every sample point.
pub fn chi_identity_check(g: &Geometry, x: usize, points: &[Vec<f64>]) -> Vec<PointOutcome> {
    let delta = g.delta(x);
    let terms: Vec<(usize, i64)> = g
        .boundary_vertices(delta)
        .into_iter()
        .map(|xp| (xp, i64::from(nu(g, delta, xp))))
        .collect();
    points
        .iter()
        .map(|p| {
            let signs = match g.sign_vector_f64(p, SIGN_TOL) {
                Ok(s) => s,
                Err(j) => return PointOutcome::OnHyperplane(j),
            };
            let lhs = i64::from(signs == g.chamber(delta).signs);
            let rhs: i64 = terms
                .iter()
                .filter(|(xp, _)| {
                    g.vertex(*xp)
                        .indices
                        .iter()
                        .zip(g.cone_signs(*xp))
                        .all(|(&j, &s)| signs[j] == s)
                })
                .map(|(_, nu)| nu)
                .sum();
            if lhs == rhs {
                PointOutcome::Pass
            } else {
                PointOutcome::Fail { lhs, rhs }
            }
        })
        .collect()
}

/// Summary of a randomized run of [`chi_identity_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiReport {
    pub tested: usize,
    pub failures: usize,
    pub resampled: usize,
}

/// The sampling box: the bounding box of all vertices, inflated threefold
/// about its centre (half-width at least one).
pub fn sampling_box(g: &Geometry) -> Vec<(f64, f64)> {
    let k = g.arrangement().dim();
    (0..k)
        .map(|d| {
            let coords: Vec<f64> = g.vertices().iter().map(|v| crate::linalg::to_f64(&v.point[d])).collect();
            let lo = coords.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = coords.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let centre = 0.5 * (lo + hi);
            let half = (1.5 * (hi - lo)).max(1.0);
            (centre - half, centre + half)
        })
        .collect()
}

/// Draws `count` generic points uniformly from [`sampling_box`] (redrawing any
/// that land within tolerance of a hyperplane) and checks the identity.
pub fn chi_identity_random<R: Rng>(g: &Geometry, x: usize, count: usize, rng: &mut R) -> ChiReport {
    let bounds = sampling_box(g);
    let mut report = ChiReport { tested: 0, failures: 0, resampled: 0 };
    let mut batch = Vec::with_capacity(count);
    while batch.len() < count {
        let p: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
        if g.sign_vector_f64(&p, SIGN_TOL).is_err() {
            report.resampled += 1;
            continue;
        }
        batch.push(p);
    }
    for outcome in chi_identity_check(g, x, &batch) {
        report.tested += 1;
        if !matches!(outcome, PointOutcome::Pass) {
            report.failures += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{AffineForm, Arrangement};
    use crate::Rational;
    use rand::SeedableRng;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn line(points: &[i64]) -> Arrangement {
        let forms = points.iter().map(|&p| AffineForm::from_ints(&[1], -p)).collect();
        Arrangement::new(forms, vec![0.5; points.len()], vec![q(1)]).unwrap()
    }

    fn example2() -> Arrangement {
        Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[1, 1], -1),
            ],
            vec![0.3, 0.4, 0.5],
            vec![q(2), q(1)],
        )
        .unwrap()
    }

    #[test]
    fn eta_psi_nu_on_two_points() {
        let g = Geometry::build(&line(&[0, 1])).unwrap();
        let ray = g.delta(1);
        let interval = g.delta(0);
        assert_eq!(eta(&g, 0, interval).unwrap(), PhaseCoefficient::one(2));
        assert_eq!(eta(&g, 0, ray).unwrap(), PhaseCoefficient::from_set(2, &[1], 1));
        assert_eq!(psi(&g, interval, 1).unwrap(), PhaseCoefficient::from_set(2, &[1], -1));
        assert!(psi(&g, ray, 0).is_err());
        assert_eq!(nu(&g, interval, 1), -1);
        assert_eq!(nu(&g, interval, 0), 1);
        assert!(eta(&g, 1, interval).is_err());
        let e = eta(&g, 0, ray).unwrap();
        let w = [0.3, 0.6];
        assert!((e.conj().as_complex(&w) - e.as_complex(&w).conj()).norm() < 1e-15);
    }

    #[test]
    fn chi_identity_on_a_line() {
        let g = Geometry::build(&line(&[0, 1])).unwrap();
        let pts = vec![vec![-1.0], vec![0.5], vec![2.0]];
        let out = chi_identity_check(&g, 0, &pts);
        assert!(out.iter().all(|o| *o == PointOutcome::Pass));
        assert_eq!(chi_identity_check(&g, 0, &[vec![1.0]]), vec![PointOutcome::OnHyperplane(1)]);
    }

    #[test]
    fn chi_identity_on_example_two() {
        let g = Geometry::build(&example2()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for x in 0..3 {
            let r = chi_identity_random(&g, x, 10_000, &mut rng);
            assert_eq!(r.failures, 0);
            assert_eq!(r.tested, 10_000);
        }
    }

    #[test]
    fn example_two_pair_sets() {
        let an = Analysis::new(&example2()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                if x == y {
                    continue;
                }
                let c = classify_pair(&an, x, y);
                assert!(c.set_a.is_empty());
                assert_eq!(c.set_b, set_b_minus(&an, x, y));
            }
        }
        assert_eq!(classify_pair(&an, 0, 2).set_b, vec![1]);
        assert_eq!(classify_pair(&an, 2, 0).set_b, vec![1]);
    }

    #[test]
    fn line_pairs_follow_the_order() {
        let an = Analysis::new(&line(&[0, 1, 3, 4])).unwrap();
        for n in 0..4 {
            for m in n + 1..4 {
                let c = classify_pair(&an, n, m);
                assert!(!c.positive_exceptional);
                assert!(c.negative_exceptional);
                assert_eq!(c.set_a, (n + 1..m).collect::<Vec<_>>());
                assert!(c.set_b.is_empty());
                assert!(classify_pair(&an, m, n).positive_exceptional);
            }
        }
    }

    #[test]
    fn theta_nu_inverse_on_example_two() {
        let g = Geometry::build(&example2()).unwrap();
        for x in 0..3 {
            assert_eq!(theta_nu_product(&g, x), crate::linalg::identity(3 - x));
        }
    }
}
