//! Small dense linear algebra: exact over [`Rational`], and complex LU for
//! determinants of quadrature matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    d
}

/// Solves `rows · x = rhs` for a square system; `None` when singular.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Generalized cross product of `k - 1` vectors in `k` dimensions: a vector
/// orthogonal (in the pairing sense) to every row. Zero iff the rows are
/// dependent. For `k = 1` the empty family yields `[1]`.
pub fn kernel_vector(rows: &[Vec<Rational>], k: usize) -> Vec<Rational> {
    debug_assert_eq!(rows.len() + 1, k);
    (0..k)
        .map(|skip| {
            let minor: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != skip)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Determinant of a complex square matrix via LU with partial pivoting.
pub fn complex_det(rows: &[Vec<Complex64>]) -> Complex64 {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut d = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if m[r][col].norm() > m[piv][col].norm() {
                piv = r;
            }
        }
        if m[piv][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col];
        d *= p;
        for r in col + 1..n {
            let factor = m[r][col] / p;
            for c in col..n {
                let t = factor * m[col][c];
                m[r][c] -= t;
            }
        }
    }
    d
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
            if i == 0 && idx[0] == n - size {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn det_and_solve_agree_on_small_system() {
        let a = vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(3, 1)]];
        assert_eq!(det(&a), r(5, 1));
        let x = solve(&a, &[r(3, 1), r(5, 1)]).unwrap();
        assert_eq!(x, vec![r(4, 5), r(7, 5)]);
    }

    #[test]
    fn singular_system_has_no_solution() {
        let a = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert!(solve(&a, &[r(0, 1), r(1, 1)]).is_none());
        assert_eq!(det(&a), r(0, 1));
    }

    #[test]
    fn kernel_vector_annihilates_rows() {
        let rows = vec![vec![r(1, 1), r(2, 1), r(-1, 1)], vec![r(0, 1), r(1, 1), r(3, 1)]];
        let v = kernel_vector(&rows, 3);
        for row in &rows {
            assert!(dot(row, &v).is_zero());
        }
        assert!(v.iter().any(|c| !c.is_zero()));
        assert_eq!(kernel_vector(&[], 1), vec![r(1, 1)]);
    }

    #[test]
    fn combinations_enumerate_all_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 3)[0], vec![0, 1, 2]);
        assert_eq!(combinations(5, 3).last().unwrap(), &vec![2, 3, 4]);
        for n in 0..7 {
            for k in 0..=n {
                assert_eq!(combinations(n, k).len(), binomial(n, k));
            }
        }
    }

    #[test]
    fn complex_det_matches_real_case() {
        let m = vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)],
        ];
        assert!((complex_det(&m) - Complex64::new(5.0, 0.0)).norm() < 1e-14);
    }
}
