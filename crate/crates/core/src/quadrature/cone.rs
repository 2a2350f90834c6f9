//! Cone integrals `I^ρ_{X,X'}(λ)` over the rotated cone `X + ρ C+_X`.
//!
//! With `z = X + ρ Σ a_i e_i`, `e_i = e_{X∖{X_i}}` and `f0(e_i) = 1`, the
//! integral becomes
//!
//! ```text
//! P e^{iθ(k + Σ β_{X_i})} e^{-λ f0(X)} ∫_{R+^k} e^{-λρ Σ a} ∏ a_i^{β_{X_i}} ∏_{r∉X} h_r(a)^{β_r} da
//! ```
//!
//! where `θ = arg ρ`, `β_j = α_j - [j ∈ X']`, `h_r = f_r(z) / f_r(X)` and `P`
//! collects the real constants. The branch of every factor is the one reached
//! from the real values on `Δ_X` by turning `ρ` from 1; `h_r` stays off the
//! negative axis along that turn, so its principal power is the right one.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use num_complex::Complex64;

use super::adaptive::{Axis, Integrator};
use super::{IntegralValue, QuadConfig};
use crate::geometry::Geometry;
use crate::linalg::{abs, det, to_f64};
use crate::{Error, Rational};

/// Rotation `ρ = e^{-iθ}` with `Im ρ < 0` and `Re(ρλ) > 0`, defined for
/// `λ ∉ iR_{≤0}`.
pub fn rho_plus(lambda: Complex64) -> Result<Complex64, Error> {
    if lambda.re == 0.0 && lambda.im <= 0.0 {
        return Err(Error::Domain(format!("λ = {lambda} lies on the cut of I+")));
    }
    let mut phi = lambda.arg();
    if phi <= -FRAC_PI_2 {
        phi += 2.0 * PI;
    }
    let lo = (phi - FRAC_PI_2).max(0.0);
    let hi = (phi + FRAC_PI_2).min(PI);
    let margin = 1e-3 * (hi - lo);
    let mut theta = FRAC_PI_8.max(phi - FRAC_PI_4);
    if theta <= lo + margin || theta >= hi - margin {
        theta = 0.5 * (lo + hi);
    }
    Ok(Complex64::from_polar(1.0, -theta))
}

/// Rotation with `Im ρ > 0` and `Re(ρλ) > 0`, the mirror image of
/// [`rho_plus`]; defined for `λ ∉ iR_{≥0}`.
pub fn rho_minus(lambda: Complex64) -> Result<Complex64, Error> {
    if lambda.re == 0.0 && lambda.im >= 0.0 {
        return Err(Error::Domain(format!("λ = {lambda} lies on the cut of I-")));
    }
    Ok(rho_plus(lambda.conj())?.conj())
}

/// `I^ρ_{X,X'}(λ)` for vertices `x`, `xp` of `g`.
pub fn integrate_cone(
    g: &Geometry,
    x: usize,
    xp: usize,
    rho: Complex64,
    lambda: Complex64,
    cfg: &QuadConfig,
) -> Result<IntegralValue, Error> {
    if (rho.norm() - 1.0).abs() > 1e-12 || rho.im == 0.0 {
        return Err(Error::Domain(format!("ρ = {rho} must be unimodular and non-real")));
    }
    let mu = lambda * rho;
    if !(mu.re > 0.0) {
        return Err(Error::Domain(format!("Re(ρλ) = {} is not positive", mu.re)));
    }
    let arr = g.arrangement();
    let k = arr.dim();
    let vertex = g.vertex(x);
    let weights = arr.weights();
    let targets = &g.vertex(xp).indices;
    let beta: Vec<f64> = (0..arr.len()).map(|j| weights[j] - if targets.contains(&j) { 1.0 } else { 0.0 }).collect();
    let signs = &g.chamber(g.delta(x)).signs;

    let dirs: Vec<Vec<Rational>> = (0..k).map(|i| g.cone_direction(x, i).to_vec()).collect();
    let mut constant = to_f64(&abs(&det(&arr.linear_rows(targets)))) * to_f64(&abs(&det(&dirs)));
    for &j in targets {
        constant *= f64::from(signs[j]);
    }
    let mut exponent = k as f64;
    for (i, &j) in vertex.indices.iter().enumerate() {
        constant *= libm::pow(to_f64(&abs(&arr.form(j).linear_eval(&dirs[i]))), beta[j]);
        exponent += beta[j];
    }
    let others: Vec<usize> = (0..arr.len()).filter(|j| !vertex.contains(*j)).collect();
    // κ_{r,i} = l_r(e_i) / f_r(X)
    let mut kappa: Vec<Vec<f64>> = Vec::with_capacity(others.len());
    for &r in &others {
        let fx = arr.form(r).eval(&vertex.point);
        constant *= libm::pow(to_f64(&abs(&fx)), beta[r]);
        kappa.push(dirs.iter().map(|e| to_f64(&(arr.form(r).linear_eval(e) / &fx))).collect());
    }
    let theta = rho.arg();
    let prefactor = Complex64::from_polar(constant, theta * exponent) * (-lambda * vertex.f0_f64()).exp();

    let axes: Vec<Axis> = vertex.indices.iter().map(|&j| Axis::SemiInfinite { left: beta[j], rate: mu.re }).collect();
    let other_beta: Vec<f64> = others.iter().map(|&r| beta[r]).collect();
    let im = mu.im;
    let integral = Integrator::new().integrate_nested(&axes, cfg, &|a: &[f64]| {
        let total: f64 = a.iter().sum();
        let mut v = Complex64::new(0.0, -im * total).exp();
        for (row, b) in kappa.iter().zip(&other_beta) {
            let s: f64 = row.iter().zip(a).map(|(c, ai)| c * ai).sum();
            v *= (Complex64::new(1.0, 0.0) + rho * s).powf(*b);
        }
        v
    });
    Ok(integral.scaled(prefactor))
}

/// `I+_{X,X'}(λ)` on `C ∖ iR_{≤0}`.
pub fn i_plus(g: &Geometry, x: usize, xp: usize, lambda: Complex64, cfg: &QuadConfig) -> Result<IntegralValue, Error> {
    integrate_cone(g, x, xp, rho_plus(lambda)?, lambda, cfg)
}

/// `I-_{X,X'}(λ)` on `C ∖ iR_{≥0}`.
pub fn i_minus(g: &Geometry, x: usize, xp: usize, lambda: Complex64, cfg: &QuadConfig) -> Result<IntegralValue, Error> {
    integrate_cone(g, x, xp, rho_minus(lambda)?, lambda, cfg)
}
