//! Numerical evaluation of chamber integrals `I_{Δ,X'}(λ)` and cone
//! integrals `I^ρ_{X,X'}(λ)`.
//!
//! Every integrand is a product of an exponential, algebraic singularities on
//! the boundary hyperplanes and smooth factors. Domains are mapped to boxes
//! whose faces carry the singularities, and the singular powers go into
//! Gauss–Jacobi (finite) or Gauss–Laguerre (half-line) weights, so the
//! remaining integrand is smooth and Gauss rules converge geometrically.

pub mod adaptive;
pub mod asymptotic;
pub mod branch;
pub mod chamber;
pub mod cone;
pub mod rules;

use num_complex::Complex64;

pub use asymptotic::{asymptotic_constants, AsymptoticConstants};
pub use branch::{continue_branch, BranchPath};
pub use chamber::{integrate_chamber, integrate_chamber_form, ChamberForm};
pub use cone::{i_minus, i_plus, integrate_cone, rho_minus, rho_plus};

/// A quadrature result with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralValue {
    pub value: Complex64,
    /// Difference between two refinement levels, summed over panels.
    pub error_estimate: f64,
    pub nodes_used: usize,
    /// False when the node budget ran out before the tolerance was met.
    pub converged: bool,
}

impl IntegralValue {
    pub fn scaled(self, factor: Complex64) -> Self {
        Self { value: self.value * factor, error_estimate: self.error_estimate * factor.norm(), ..self }
    }

    pub fn zero() -> Self {
        Self { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, nodes_used: 0, converged: true }
    }

    pub fn plus(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            nodes_used: self.nodes_used + other.nodes_used,
            converged: self.converged && other.converged,
        }
    }
}

/// Tolerances and budget. `max_nodes` bounds the function evaluations of each
/// one-dimensional integration (each level of a nested integral separately).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_nodes: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 0.0, max_nodes: 20_000 }
    }
}

impl QuadConfig {
    /// Configuration for an inner level of a nested integral.
    pub(crate) fn inner(&self) -> Self {
        Self { rel_tol: (self.rel_tol * 0.1).max(1e-14), abs_tol: 0.0, max_nodes: self.max_nodes }
    }
}
