//! Gauss–Jacobi and generalized Gauss–Laguerre rules by the Golub–Welsch
//! method: eigenvalues of the Jacobi matrix are the nodes, squared first
//! eigenvector components times the weight mass are the weights.

use alloc::vec;
use alloc::vec::Vec;

/// Nodes and weights of one quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `off` (`off[i]` couples `i` and `i + 1`), together with the
/// first component of each normalized eigenvector. Implicit QL with Wilkinson
/// shifts.
fn tridiagonal_eigen(mut d: Vec<f64>, off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&off[..n - 1]);
    let mut z0 = vec![0.0; n];
    z0[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let f = z0[i + 1];
                z0[i + 1] = s * z0[i] + c * f;
                z0[i] = c * z0[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    (d, z0)
}

fn from_jacobi_matrix(diag: Vec<f64>, off: Vec<f64>, mass: f64) -> Rule {
    let (nodes, z0) = tridiagonal_eigen(diag, &off);
    let mut pairs: Vec<(f64, f64)> = nodes.into_iter().zip(z0).map(|(x, v)| (x, mass * v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Rule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() }
}

/// `n`-point rule for `∫_{-1}^{1} f(x) (1-x)^a (1+x)^b dx`, `a, b > -1`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Rule {
    assert!(n >= 1 && a > -1.0 && b > -1.0, "invalid Gauss–Jacobi parameters");
    let ab = a + b;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1).max(1)];
    diag[0] = (b - a) / (ab + 2.0);
    for (i, d) in diag.iter_mut().enumerate().skip(1) {
        let i = i as f64;
        *d = (b * b - a * a) / ((2.0 * i + ab) * (2.0 * i + ab + 2.0));
    }
    for i in 1..n {
        let fi = i as f64;
        let t = 2.0 * fi + ab;
        let sq = if i == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * fi * (fi + a) * (fi + b) * (fi + ab) / (t * t * (t + 1.0) * (t - 1.0))
        };
        off[i - 1] = libm::sqrt(sq);
    }
    let mass = libm::exp(
        (ab + 1.0) * core::f64::consts::LN_2 + libm::lgamma(a + 1.0) + libm::lgamma(b + 1.0) - libm::lgamma(ab + 2.0),
    );
    from_jacobi_matrix(diag, off, mass)
}

/// `n`-point rule for `∫_0^∞ f(x) x^a e^{-x} dx`, `a > -1`.
pub fn gauss_laguerre(n: usize, a: f64) -> Rule {
    assert!(n >= 1 && a > -1.0, "invalid Gauss–Laguerre parameters");
    let diag = (0..n).map(|i| 2.0 * i as f64 + a + 1.0).collect();
    let mut off: Vec<f64> = (1..n).map(|i| libm::sqrt(i as f64 * (i as f64 + a))).collect();
    if off.is_empty() {
        off.push(0.0);
    }
    from_jacobi_matrix(diag, off, libm::tgamma(a + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(x: f64, y: f64) -> f64 {
        libm::exp(libm::lgamma(x) + libm::lgamma(y) - libm::lgamma(x + y))
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_jacobi(10, 0.0, 0.0);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let x18: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(18)).sum();
        assert!((x18 - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_moments_match_beta_functions() {
        for &(a, b) in &[(-0.7, 0.0), (0.3, -0.5), (-0.5, -0.5), (-0.2, -0.8), (1.5, 0.25)] {
            let r = gauss_jacobi(12, a, b);
            let m0: f64 = r.weights.iter().sum();
            let m1: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * (1.0 + x)).sum();
            let scale = libm::pow(2.0, a + b + 1.0);
            assert!((m0 - scale * beta(a + 1.0, b + 1.0)).abs() < 1e-13 * m0.abs().max(1.0));
            assert!((m1 - 2.0 * scale * beta(a + 1.0, b + 2.0)).abs() < 1e-13 * m1.abs().max(1.0));
            assert!(r.nodes.iter().all(|x| x.abs() < 1.0));
        }
    }

    #[test]
    fn laguerre_moments_are_gamma_values() {
        for &a in &[-0.6, 0.0, 0.4] {
            let r = gauss_laguerre(15, a);
            for m in 0..6 {
                let q: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(m)).sum();
                let exact = libm::tgamma(a + 1.0 + m as f64);
                assert!((q - exact).abs() < 1e-11 * exact, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn single_node_rules() {
        let r = gauss_jacobi(1, 0.0, 0.0);
        assert!((r.nodes[0]).abs() < 1e-15 && (r.weights[0] - 2.0).abs() < 1e-15);
        let l = gauss_laguerre(1, 0.0);
        assert!((l.nodes[0] - 1.0).abs() < 1e-15 && (l.weights[0] - 1.0).abs() < 1e-15);
    }
}
