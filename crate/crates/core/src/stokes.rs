//! Closed-form Stokes matrices and the two worked-example oracles.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;
use num_complex::Complex64;

use crate::coefficients::classify_pair;
use crate::geometry::Analysis;
use crate::Error;

/// Which rule produced a matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryRule {
    Diagonal,
    ExceptionalZero,
    Product { set_a: Vec<usize>, set_b: Vec<usize>, new_hyperplanes: Vec<usize> },
}

/// `C0`, `C1` with entry `[X'][X]` meaning `C(X', X)`; vertices in increasing
/// `f0` order.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesData {
    pub order: Vec<Vec<usize>>,
    pub c0: Vec<Vec<Complex64>>,
    pub c1: Vec<Vec<Complex64>>,
    pub rule_c0: Vec<Vec<EntryRule>>,
    pub rule_c1: Vec<Vec<EntryRule>>,
}

fn phase(x: f64) -> Complex64 {
    let (s, c) = libm::sincos(PI * x);
    Complex64::new(c, s)
}

/// `(-1)^{|B| + |new|} e^{πi(α_B - α_A + shift)} prod_{j in new} 2i sin πα_j`.
fn product_entry(weights: &[f64], set_a: &[usize], set_b: &[usize], new: &[usize], shift: f64) -> Complex64 {
    let sum = |s: &[usize]| s.iter().map(|&j| weights[j]).sum::<f64>();
    let sign = if (set_b.len() + new.len()) % 2 == 0 { 1.0 } else { -1.0 };
    let mut z = phase(sum(set_b) - sum(set_a) + shift) * sign;
    for &j in new {
        z *= Complex64::new(0.0, 2.0 * libm::sin(PI * weights[j]));
    }
    z
}

pub fn stokes_matrices(an: &Analysis) -> StokesData {
    let g = &an.plus;
    let w = an.arrangement().weights();
    let m = g.vertices().len();
    let zero = Complex64::new(0.0, 0.0);
    let mut c0 = vec![vec![zero; m]; m];
    let mut c1 = vec![vec![zero; m]; m];
    let mut rule_c0 = vec![vec![EntryRule::Diagonal; m]; m];
    let mut rule_c1 = vec![vec![EntryRule::Diagonal; m]; m];
    for x in 0..m {
        c0[x][x] = Complex64::new(1.0, 0.0);
        c1[x][x] = Complex64::new(1.0, 0.0);
        for xp in 0..m {
            if xp == x {
                continue;
            }
            let cls = classify_pair(an, x, xp);
            let vx = g.vertex(x);
            let vy = g.vertex(xp);
            let new: Vec<usize> = vy.indices.iter().copied().filter(|j| !vx.contains(*j)).collect();
            let rule = EntryRule::Product {
                set_a: cls.set_a.clone(),
                set_b: cls.set_b.clone(),
                new_hyperplanes: new.clone(),
            };
            if cls.positive_exceptional {
                rule_c0[xp][x] = EntryRule::ExceptionalZero;
            } else {
                c0[xp][x] = product_entry(w, &cls.set_a, &cls.set_b, &new, 0.0);
                rule_c0[xp][x] = rule.clone();
            }
            if cls.negative_exceptional {
                rule_c1[xp][x] = EntryRule::ExceptionalZero;
            } else {
                let shift = an.arrangement().weight_sum(&vx.indices) - an.arrangement().weight_sum(&vy.indices);
                c1[xp][x] = product_entry(w, &cls.set_a, &cls.set_b, &new, shift);
                rule_c1[xp][x] = rule;
            }
        }
    }
    StokesData { order: g.vertices().iter().map(|v| v.indices.clone()).collect(), c0, c1, rule_c0, rule_c1 }
}

fn two_i_sin(a: f64) -> Complex64 {
    Complex64::new(0.0, 2.0 * libm::sin(PI * a))
}

/// Closed-form Stokes matrices for points `X_1 < ... < X_N` on a line with
/// `f_j = z - X_j`, `f0 = z`.
pub fn example1_oracle(points: &[f64], weights: &[f64]) -> Result<StokesData, Error> {
    let n = points.len();
    if weights.len() != n {
        return Err(Error::Domain("one weight per point".into()));
    }
    if points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("points must be strictly increasing".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut c0 = vec![vec![zero; n]; n];
    let mut c1 = vec![vec![zero; n]; n];
    let sum = |from: usize, to: usize| (from..to).map(|s| weights[s]).sum::<f64>();
    for i in 0..n {
        c0[i][i] = one;
        c1[i][i] = one;
    }
    for m in 0..n {
        for nn in 0..m {
            // C0(X_m, X_n), m > n.
            c0[m][nn] = -two_i_sin(weights[m]) * phase(-sum(nn + 1, m));
            // C1(X_n, X_m), n < m.
            c1[nn][m] = -two_i_sin(weights[nn]) * phase(weights[m] - sum(nn, m));
        }
    }
    Ok(StokesData {
        order: (0..n).map(|j| vec![j]).collect(),
        c0,
        c1,
        rule_c0: vec![vec![EntryRule::Diagonal; n]; n],
        rule_c1: vec![vec![EntryRule::Diagonal; n]; n],
    })
}

/// Closed-form Stokes matrices for `f1 = x`, `f2 = y`, `f3 = x + y - 1`,
/// `f0 = ax + by` with `a > b > 0`.
pub fn example2_oracle(a: f64, b: f64, weights: &[f64]) -> Result<StokesData, Error> {
    if !(a > b && b > 0.0) {
        return Err(Error::Domain("need a > b > 0".into()));
    }
    if weights.len() != 3 {
        return Err(Error::Domain("three weights expected".into()));
    }
    let (a1, a2, a3) = (weights[0], weights[1], weights[2]);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let c0 = vec![
        vec![one, zero, zero],
        vec![-two_i_sin(a3), one, zero],
        vec![two_i_sin(a3) * phase(a2), -two_i_sin(a2), one],
    ];
    let c1 = vec![
        vec![one, -two_i_sin(a2) * phase(a3 - a2), two_i_sin(a1) * phase(a2 + a3 - a1)],
        vec![zero, one, -two_i_sin(a1) * phase(a2 - a1)],
        vec![zero, zero, one],
    ];
    Ok(StokesData {
        order: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        c0,
        c1,
        rule_c0: vec![vec![EntryRule::Diagonal; 3]; 3],
        rule_c1: vec![vec![EntryRule::Diagonal; 3]; 3],
    })
}

/// Largest entrywise distance between the `C0` and `C1` matrices of two results.
pub fn max_entry_difference(a: &StokesData, b: &StokesData) -> f64 {
    let mut worst: f64 = 0.0;
    for (ma, mb) in [(&a.c0, &b.c0), (&a.c1, &b.c1)] {
        for (ra, rb) in ma.iter().zip(mb) {
            for (x, y) in ra.iter().zip(rb) {
                worst = worst.max((x - y).norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{AffineForm, Arrangement};
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn confluent_case() {
        let w = [0.3, 0.6];
        let forms = vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[1], -1)];
        let arr = Arrangement::new(forms, w.to_vec(), vec![q(1)]).unwrap();
        let s = stokes_matrices(&Analysis::new(&arr).unwrap());
        let expected = Complex64::new(0.0, -2.0 * libm::sin(PI * 0.6));
        assert!((s.c0[1][0] - expected).norm() < 1e-15);
        assert_eq!(s.c0[0][1], Complex64::new(0.0, 0.0));
        assert_eq!(s.rule_c0[0][1], EntryRule::ExceptionalZero);
        let oracle = example1_oracle(&[0.0, 1.0], &w).unwrap();
        assert!(max_entry_difference(&s, &oracle) < 1e-14);
    }

    #[test]
    fn example_two_against_display() {
        let w = [0.3, 0.4, 0.5];
        let arr = Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[1, 1], -1),
            ],
            w.to_vec(),
            vec![q(2), q(1)],
        )
        .unwrap();
        let s = stokes_matrices(&Analysis::new(&arr).unwrap());
        let oracle = example2_oracle(2.0, 1.0, &w).unwrap();
        assert!(max_entry_difference(&s, &oracle) < 1e-14, "{s:?}");
        assert!(example2_oracle(1.0, 2.0, &w).is_err());
    }

    #[test]
    fn oracle_rejects_unsorted_points() {
        assert!(example1_oracle(&[1.0, 0.0], &[0.5, 0.5]).is_err());
    }
}
