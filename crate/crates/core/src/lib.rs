//! Stokes matrices of the hypergeometric ODE attached to a generic arrangement
//! of affine hyperplanes with positive weights and a direction form `f0`.
//!
//! The crate is `no_std` (it needs `alloc`). Combinatorics run in exact
//! rational arithmetic; integrals are evaluated by nested Gauss–Jacobi /
//! Gauss–Laguerre quadrature with explicit branch bookkeeping.
//!
//! Layout:
//! - [`arrangement`], [`geometry`]: forms, vertices, chambers, cones, `D+`.
//! - [`coefficients`]: the phase systems `eta`, `psi`, `nu` and pair classification.
//! - [`ode`]: the matrices `A`, `B` of `I' = -(A + B/λ) I`.
//! - [`stokes`]: the closed-form Stokes matrices `C0`, `C1` and example oracles.
//! - [`quadrature`]: chamber and cone integrals, branch continuation, asymptotics.
//! - [`verify`]: numerical certification of every identity linking the above.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arrangement;
pub mod coefficients;
mod error;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod ode;
pub mod quadrature;
pub mod random;
pub mod stokes;
pub mod verify;

pub use arrangement::{AffineForm, Arrangement, Violation};
pub use error::Error;
pub use geometry::{Analysis, Chamber, ConeMembership, ConeStatus, Edge, Geometry, Vertex};
pub use num_complex::Complex64;
pub use quadrature::{IntegralValue, QuadConfig};
pub use stokes::StokesData;

/// Exact rational scalar used for all combinatorial predicates.
pub type Rational = num_rational::BigRational;
