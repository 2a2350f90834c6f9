//! Affine forms, arrangements and the genericity test.
//!
//! Hyperplane indices are 0-based throughout the library. Human-facing
//! renderings (the `Display` impl of [`Violation`], the CLI wire format)
//! shift them to 1-based.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::linalg::{combinations, det, dot, kernel_vector, solve, to_f64};
use crate::{Error, Rational};

/// `f(z) = linear · z + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub linear: Vec<Rational>,
    pub constant: Rational,
}

impl AffineForm {
    pub fn new(linear: Vec<Rational>, constant: Rational) -> Self {
        Self { linear, constant }
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(linear: &[i64], constant: i64) -> Self {
        Self {
            linear: linear.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            constant: Rational::from_integer(constant.into()),
        }
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        dot(&self.linear, z) + &self.constant
    }

    /// The linear part applied to a direction vector.
    pub fn linear_eval(&self, v: &[Rational]) -> Rational {
        dot(&self.linear, v)
    }

    pub fn eval_f64(&self, z: &[f64]) -> f64 {
        self.linear
            .iter()
            .zip(z)
            .map(|(c, x)| to_f64(c) * x)
            .sum::<f64>()
            + to_f64(&self.constant)
    }
}

/// A genericity failure, naming the offending (0-based) index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The linear parts of these `k` forms are linearly dependent.
    DependentNormals(Vec<usize>),
    /// These `k + 1` hyperplanes share a point.
    CommonPoint(Vec<usize>),
    /// `f0` takes the same value on the two vertices.
    CoincidentF0Values(Vec<usize>, Vec<usize>),
    /// `f0` is constant along the edge cut out by these `k - 1` hyperplanes.
    F0ConstantOnEdge(Vec<usize>),
}

fn one_based(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|j| format!("{}", j + 1)).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DependentNormals(s) => {
                write!(f, "dependent linear parts {}", one_based(s))
            }
            Violation::CommonPoint(s) => {
                write!(f, "hyperplanes {} share a point", one_based(s))
            }
            Violation::CoincidentF0Values(a, b) => write!(
                f,
                "f0 takes equal values on vertices {} and {}",
                one_based(a),
                one_based(b)
            ),
            Violation::F0ConstantOnEdge(s) => {
                write!(f, "f0 constant on edge {}", one_based(s))
            }
        }
    }
}

/// Hyperplanes `f_j = 0` in `R^k` with positive weights and a linear form `f0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<AffineForm>,
    weights: Vec<f64>,
    f0: Vec<Rational>,
}

impl Arrangement {
    /// Checks shapes, weight positivity and nonzero linear parts. Genericity
    /// is a separate question, see [`Arrangement::validate_genericity`].
    pub fn new(forms: Vec<AffineForm>, weights: Vec<f64>, f0: Vec<Rational>) -> Result<Self, Error> {
        let dim = f0.len();
        if dim == 0 {
            return Err(Error::InvalidArrangement("dimension must be at least 1".into()));
        }
        if forms.len() < dim {
            return Err(Error::InvalidArrangement(format!(
                "need at least k = {dim} hyperplanes, got {}",
                forms.len()
            )));
        }
        if weights.len() != forms.len() {
            return Err(Error::InvalidArrangement(format!(
                "{} weights for {} hyperplanes",
                weights.len(),
                forms.len()
            )));
        }
        for (j, form) in forms.iter().enumerate() {
            if form.linear.len() != dim {
                return Err(Error::InvalidArrangement(format!(
                    "form {} has {} coefficients, expected {dim}",
                    j + 1,
                    form.linear.len()
                )));
            }
            if form.linear.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArrangement(format!(
                    "form {} has zero linear part",
                    j + 1
                )));
            }
        }
        for (j, w) in weights.iter().enumerate() {
            if !(w.is_finite() && *w > 0.0) {
                return Err(Error::InvalidArrangement(format!(
                    "weight {} must be positive and finite, got {w}",
                    j + 1
                )));
            }
        }
        Ok(Self { dim, forms, weights, f0 })
    }

    /// Like [`Arrangement::new`], additionally rejecting non-generic input.
    pub fn generic(forms: Vec<AffineForm>, weights: Vec<f64>, f0: Vec<Rational>) -> Result<Self, Error> {
        let arr = Self::new(forms, weights, f0)?;
        let violations = arr.validate_genericity();
        if violations.is_empty() {
            Ok(arr)
        } else {
            Err(Error::NotGeneric(violations))
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of hyperplanes.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn form(&self, j: usize) -> &AffineForm {
        &self.forms[j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn f0(&self) -> &[Rational] {
        &self.f0
    }

    pub fn f0_eval(&self, z: &[Rational]) -> Rational {
        dot(&self.f0, z)
    }

    pub fn f0_eval_f64(&self, z: &[f64]) -> f64 {
        self.f0.iter().zip(z).map(|(c, x)| to_f64(c) * x).sum()
    }

    /// `alpha_U`, the weight sum over an index set.
    pub fn weight_sum(&self, set: &[usize]) -> f64 {
        set.iter().map(|&j| self.weights[j]).sum()
    }

    /// Same hyperplanes and weights, direction form `-f0`.
    pub fn reflected(&self) -> Self {
        Self {
            dim: self.dim,
            forms: self.forms.clone(),
            weights: self.weights.clone(),
            f0: self.f0.iter().map(|c| -c).collect(),
        }
    }

    /// Same hyperplanes and direction form with new weights.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self, Error> {
        Self::new(self.forms.clone(), weights, self.f0.clone())
    }

    /// Rows `l_j` for `j` in `set`, in the given order.
    pub fn linear_rows(&self, set: &[usize]) -> Vec<Vec<Rational>> {
        set.iter().map(|&j| self.forms[j].linear.clone()).collect()
    }

    /// The common point of the hyperplanes in `set` (`|set| = k`), if unique.
    pub fn intersection_point(&self, set: &[usize]) -> Option<Vec<Rational>> {
        let rows = self.linear_rows(set);
        let rhs: Vec<Rational> = set.iter().map(|&j| -&self.forms[j].constant).collect();
        solve(&rows, &rhs)
    }

    /// Kernel direction of the linear parts in `set` (`|set| = k - 1`), unnormalized.
    pub fn edge_kernel(&self, set: &[usize]) -> Vec<Rational> {
        kernel_vector(&self.linear_rows(set), self.dim)
    }

    /// Every reason this arrangement fails to be generic; empty when it is.
    pub fn validate_genericity(&self) -> Vec<Violation> {
        let n = self.len();
        let k = self.dim;
        let mut out = Vec::new();

        let mut points: Vec<(Vec<usize>, Rational)> = Vec::new();
        for set in combinations(n, k) {
            match self.intersection_point(&set) {
                Some(p) => points.push((set, self.f0_eval(&p))),
                None => out.push(Violation::DependentNormals(set)),
            }
        }

        for set in combinations(n, k + 1) {
            let rows: Vec<Vec<Rational>> = set
                .iter()
                .map(|&j| {
                    let mut row = self.forms[j].linear.clone();
                    row.push(self.forms[j].constant.clone());
                    row
                })
                .collect();
            if det(&rows).is_zero() {
                out.push(Violation::CommonPoint(set));
            }
        }

        let mut sorted: Vec<&(Vec<usize>, Rational)> = points.iter().collect();
        sorted.sort_by(|a, b| a.1.cmp(&b.1));
        for w in sorted.windows(2) {
            if w[0].1 == w[1].1 {
                out.push(Violation::CoincidentF0Values(w[0].0.clone(), w[1].0.clone()));
            }
        }

        if k >= 1 {
            for set in combinations(n, k - 1) {
                let e = self.edge_kernel(&set);
                if e.iter().all(Zero::is_zero) {
                    // Dependent rows; reported through every k-subset containing them.
                    continue;
                }
                if dot(&self.f0, &e).is_zero() {
                    out.push(Violation::F0ConstantOnEdge(set));
                }
            }
        }
        out
    }
}

/// Points `X_1 < ... < X_N` on the line: `f_j = z - X_j`, `f0 = z`.
pub fn line_arrangement(points: &[Rational], weights: Vec<f64>) -> Result<Arrangement, Error> {
    let forms = points
        .iter()
        .map(|p| AffineForm::new(alloc::vec![Rational::from_integer(1.into())], -p))
        .collect();
    Arrangement::generic(forms, weights, alloc::vec![Rational::from_integer(1.into())])
}

/// `f1 = x`, `f2 = y`, `f3 = x + y - 1` with `f0 = ax + by`.
pub fn triangle_arrangement(a: Rational, b: Rational, weights: Vec<f64>) -> Result<Arrangement, Error> {
    let forms = alloc::vec![
        AffineForm::from_ints(&[1, 0], 0),
        AffineForm::from_ints(&[0, 1], 0),
        AffineForm::from_ints(&[1, 1], -1),
    ];
    Arrangement::generic(forms, weights, alloc::vec![a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::string::ToString;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    pub(crate) fn example2(a: i64, b: i64) -> Arrangement {
        Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[1, 1], -1),
            ],
            vec![0.3, 0.4, 0.5],
            vec![q(a), q(b)],
        )
        .unwrap()
    }

    #[test]
    fn example_two_is_generic() {
        assert!(example2(2, 1).validate_genericity().is_empty());
    }

    #[test]
    fn identical_points_on_a_line_share_a_point() {
        let arr = Arrangement::new(
            vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[1], 0)],
            vec![0.5, 0.5],
            vec![q(1)],
        )
        .unwrap();
        let v = arr.validate_genericity();
        assert!(v.contains(&Violation::CommonPoint(vec![0, 1])));
    }

    #[test]
    fn f0_constant_along_an_edge_is_reported() {
        // x = 0 and x = 1 are parallel, so use x, y, x + y - 1 with f0 = y:
        // the edge {x = 0} is vertical and f0 is not constant there, but the
        // edge {y = 0} is horizontal and f0 = y is constant on it.
        let arr = Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[1, 1], -1),
            ],
            vec![0.5; 3],
            vec![q(0), q(1)],
        )
        .unwrap();
        let v = arr.validate_genericity();
        assert!(v.contains(&Violation::F0ConstantOnEdge(vec![1])));
        assert!(!v.contains(&Violation::F0ConstantOnEdge(vec![0])));
        assert_eq!(Violation::F0ConstantOnEdge(vec![1]).to_string(), "f0 constant on edge {2}");
    }

    #[test]
    fn parallel_lines_have_dependent_normals() {
        let arr = Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[1, 0], -1),
                AffineForm::from_ints(&[0, 1], 0),
            ],
            vec![0.5; 3],
            vec![q(1), q(3)],
        )
        .unwrap();
        let v = arr.validate_genericity();
        assert!(v.contains(&Violation::DependentNormals(vec![0, 1])));
        // f0 = x + 3y is not constant on any edge, so only the normals complain.
        assert!(v.iter().all(|x| matches!(x, Violation::DependentNormals(_))));
    }

    #[test]
    fn structural_checks_reject_bad_input() {
        let bad_weight = Arrangement::new(vec![AffineForm::from_ints(&[1], 0)], vec![0.0], vec![q(1)]);
        assert!(matches!(bad_weight, Err(Error::InvalidArrangement(_))));
        let zero_form = Arrangement::new(vec![AffineForm::from_ints(&[0], 1)], vec![1.0], vec![q(1)]);
        assert!(matches!(zero_form, Err(Error::InvalidArrangement(_))));
        let too_few = Arrangement::new(vec![AffineForm::from_ints(&[1, 0], 1)], vec![1.0], vec![q(1), q(0)]);
        assert!(matches!(too_few, Err(Error::InvalidArrangement(_))));
    }

    #[test]
    fn coincident_vertex_values() {
        let arr = Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[1, 1], -1),
            ],
            vec![0.5; 3],
            vec![q(1), q(1)],
        )
        .unwrap();
        let v = arr.validate_genericity();
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::CoincidentF0Values(a, b) if a == &vec![0, 2] && b == &vec![1, 2]
                || a == &vec![1, 2] && b == &vec![0, 2])));
    }
}
