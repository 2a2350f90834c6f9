//! Leading constants of `I+_{X,X'}(λ)` as `λ → +∞`.

use alloc::vec::Vec;

use crate::geometry::Geometry;
use crate::linalg::{abs, det, to_f64};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    /// `|det(l_r(e_{X∖{j}}))|`, rows `j ∈ X`, columns `r ∈ X'`.
    pub j: f64,
    pub d: f64,
}

/// `J_{X,X'}` and `D_{X,X'}`. For `X' = X`,
/// `I+_{X,X}(λ) ≈ (∏_{j∈X} σ_j) D_{X,X} e^{-λ f0(X)} λ^{-α_X}` where `σ_j` is the
/// sign of `f_j` on `Δ_X`.
pub fn asymptotic_constants(g: &Geometry, x: usize, xp: usize) -> AsymptoticConstants {
    let arr = g.arrangement();
    let vertex = g.vertex(x);
    let targets = &g.vertex(xp).indices;
    let w = arr.weights();
    let rows: Vec<Vec<Rational>> = (0..vertex.indices.len())
        .map(|i| targets.iter().map(|&r| arr.form(r).linear_eval(g.cone_direction(x, i))).collect())
        .collect();
    let j = to_f64(&abs(&det(&rows)));
    let mut d = j;
    for (i, &jx) in vertex.indices.iter().enumerate() {
        let inside = targets.contains(&jx);
        let slope = to_f64(&abs(&arr.form(jx).linear_eval(g.cone_direction(x, i))));
        d *= libm::tgamma(w[jx] + if inside { 0.0 } else { 1.0 });
        d *= libm::pow(slope, w[jx] - if inside { 1.0 } else { 0.0 });
    }
    for r in (0..arr.len()).filter(|r| !vertex.contains(*r)) {
        let fx = to_f64(&abs(&arr.form(r).eval(&vertex.point)));
        d *= libm::pow(fx, w[r] - if targets.contains(&r) { 1.0 } else { 0.0 });
    }
    AsymptoticConstants { j, d }
}
