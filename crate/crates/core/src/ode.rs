//! The linear system `I'(λ) = -(A + B/λ) I(λ)` satisfied by the integrals,
//! together with its formal normal form and the auxiliary sign data.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arrangement::{Arrangement, Violation};
use crate::geometry::Geometry;
use crate::linalg::{sign, solve, to_f64};
use crate::{Error, Rational};

/// Matrices of the system, indexed by vertices in increasing `f0` order.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSystem {
    pub order: Vec<Vec<usize>>,
    /// Diagonal of `A`, the values `f0(X)`.
    pub mat_a: Vec<f64>,
    pub mat_b: Vec<Vec<f64>>,
    /// Diagonal of `B`, the weight sums `alpha_X`.
    pub weights_diag: Vec<f64>,
}

impl OdeSystem {
    /// `-(A + B/λ) v`.
    pub fn rhs(&self, lambda: Complex64, v: &[Complex64]) -> Vec<Complex64> {
        let inv = lambda.inv();
        (0..v.len())
            .map(|i| {
                let bv: Complex64 = self.mat_b[i].iter().zip(v).map(|(b, x)| x * *b).sum();
                -(v[i] * self.mat_a[i] + bv * inv)
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// `sgn l_j(e_U)`.
pub fn epsilon_single(arr: &Arrangement, j: usize, u: &[usize]) -> Result<i8, Error> {
    let e = arr.edge_direction(u)?;
    match sign(&arr.form(j).linear_eval(&e.direction)) {
        0 => {
            let mut set = u.to_vec();
            set.push(j);
            set.sort_unstable();
            Err(Error::NotGeneric(vec![Violation::DependentNormals(set)]))
        }
        s => Ok(s),
    }
}

/// `sgn(l_j(e_U) l_r(e_U))`.
pub fn epsilon_pair(arr: &Arrangement, j: usize, r: usize, u: &[usize]) -> Result<i8, Error> {
    Ok(epsilon_single(arr, j, u)? * epsilon_single(arr, r, u)?)
}

pub fn build_ode(g: &Geometry) -> Result<OdeSystem, Error> {
    let arr = g.arrangement();
    let vs = g.vertices();
    let m = vs.len();
    let k = arr.dim();
    let mut mat_b = vec![vec![0.0; m]; m];
    for (x, vx) in vs.iter().enumerate() {
        mat_b[x][x] = arr.weight_sum(&vx.indices);
        for (y, vy) in vs.iter().enumerate() {
            if x == y {
                continue;
            }
            let u: Vec<usize> = vx.indices.iter().copied().filter(|j| vy.contains(*j)).collect();
            if u.len() + 1 != k {
                continue;
            }
            let j = vx.indices.iter().copied().find(|j| !vy.contains(*j)).expect("X differs from Y");
            let r = vy.indices.iter().copied().find(|r| !vx.contains(*r)).expect("Y differs from X");
            mat_b[x][y] = f64::from(epsilon_pair(arr, j, r, &u)?) * arr.weights()[r];
        }
    }
    Ok(OdeSystem {
        order: vs.iter().map(|v| v.indices.clone()).collect(),
        mat_a: vs.iter().map(|v| v.f0_f64()).collect(),
        weights_diag: (0..m).map(|x| mat_b[x][x]).collect(),
        mat_b,
    })
}

/// Coefficients `c_{0,j}` with `f0(z) = f0(X) + sum_{j in X} c_{0,j} f_j(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDecomposition {
    pub vertex: Vec<usize>,
    /// `(j, c_{0,j})` in increasing `j`.
    pub c0: Vec<(usize, Rational)>,
}

impl VertexDecomposition {
    /// Evaluates `f0(X) + sum c_{0,j} f_j(z)`.
    pub fn eval(&self, arr: &Arrangement, f0_at_vertex: &Rational, z: &[Rational]) -> Rational {
        self.c0.iter().fold(f0_at_vertex.clone(), |acc, (j, c)| acc + c * arr.form(*j).eval(z))
    }
}

pub fn f0_decomposition(arr: &Arrangement, vertex: &[usize]) -> Result<VertexDecomposition, Error> {
    let k = arr.dim();
    let transposed: Vec<Vec<Rational>> = (0..k)
        .map(|row| vertex.iter().map(|&j| arr.form(j).linear[row].clone()).collect())
        .collect();
    let c = solve(&transposed, arr.f0())
        .ok_or_else(|| Error::NotGeneric(vec![Violation::DependentNormals(vertex.to_vec())]))?;
    Ok(VertexDecomposition { vertex: vertex.to_vec(), c0: vertex.iter().copied().zip(c).collect() })
}

/// `e^{-λ f0(X)} λ^{-alpha_X}` on the sheet of `log λ` whose argument lies in
/// `(-π, π] + 2π sheet`.
pub fn normal_form_solution(f0_x: f64, alpha_x: f64, lambda: Complex64, sheet: i32) -> Result<Complex64, Error> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("the normal form is singular at λ = 0".into()));
    }
    let log = Complex64::new(
        libm::log(lambda.norm()),
        lambda.arg() + 2.0 * core::f64::consts::PI * f64::from(sheet),
    );
    Ok((-lambda * f0_x - log * alpha_x).exp())
}

/// `f0(X)` as a float, for callers holding an index set.
pub fn f0_at(arr: &Arrangement, vertex: &[usize]) -> Option<f64> {
    arr.intersection_point(vertex).map(|p| to_f64(&arr.f0_eval(&p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::AffineForm;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn example2(a: i64, b: i64) -> Arrangement {
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
    fn line_system_has_identical_rows() {
        let forms = [0, 1, 3].iter().map(|&p| AffineForm::from_ints(&[1], -p)).collect();
        let arr = Arrangement::new(forms, vec![0.2, 0.5, 0.7], vec![q(1)]).unwrap();
        let ode = build_ode(&Geometry::build(&arr).unwrap()).unwrap();
        assert_eq!(ode.mat_a, vec![0.0, 1.0, 3.0]);
        for row in &ode.mat_b {
            assert_eq!(row, &vec![0.2, 0.5, 0.7]);
        }
    }

    #[test]
    fn example_two_signs() {
        let arr = example2(3, 1);
        assert_eq!(epsilon_pair(&arr, 0, 1, &[2]).unwrap(), -1);
        assert_eq!(epsilon_pair(&arr, 1, 0, &[2]).unwrap(), -1);
        let line = Arrangement::new(vec![AffineForm::from_ints(&[1], 0)], vec![0.5], vec![q(1)]).unwrap();
        assert_eq!(epsilon_single(&line, 0, &[]).unwrap(), 1);
    }

    #[test]
    fn decomposition_of_coordinate_vertex() {
        let arr = example2(2, 1);
        let d = f0_decomposition(&arr, &[0, 1]).unwrap();
        assert_eq!(d.c0, vec![(0, q(2)), (1, q(1))]);
    }

    #[test]
    fn normal_form_branches() {
        assert_eq!(normal_form_solution(0.0, 0.0, Complex64::new(2.0, 1.0), 0).unwrap(), Complex64::new(1.0, 0.0));
        let v = normal_form_solution(0.0, 0.4, Complex64::new(3.0, 0.0), 0).unwrap();
        assert!(v.im.abs() < 1e-15 && v.re > 0.0);
        let l = Complex64::new(0.7, -1.3);
        let a = normal_form_solution(0.5, 0.3, l, 0).unwrap();
        let b = normal_form_solution(0.5, 0.3, l, 1).unwrap();
        let mono = Complex64::new(0.0, -2.0 * core::f64::consts::PI * 0.3).exp();
        assert!((b - a * mono).norm() < 1e-14);
        assert!(normal_form_solution(0.0, 0.3, Complex64::new(0.0, 0.0), 0).is_err());
    }
}
