//! Numerical certification of the identities linking chamber integrals,
//! cone integrals, the ODE and the closed-form Stokes matrices.
//!
//! Every check evaluates both sides by quadrature and reports the largest
//! relative residual over its samples. The Stokes matrices enter only as
//! closed forms; nothing here feeds numerical results back into them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::coefficients::{eta, psi};
use crate::geometry::{Analysis, Geometry};
use crate::linalg::complex_det;
use crate::ode::{build_ode, epsilon_single};
use crate::quadrature::{
    asymptotic_constants, i_minus, i_plus, integrate_chamber, integrate_chamber_form, ChamberForm, IntegralValue,
    QuadConfig,
};
use crate::stokes::stokes_matrices;
use crate::Error;

/// Names accepted by [`run_check`], in declaration order.
pub const CHECK_NAMES: [&str; 8] =
    ["ode", "decomposition", "inversion", "stokes_c0", "stokes_c1", "cohomological", "wronskian", "asymptotics"];

const FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub quad: QuadConfig,
    /// Residual bound for the identity checks.
    pub tol: f64,
    /// Central-difference step of the ODE check.
    pub fd_step: f64,
    /// Lower bound on `|det W| / ∏ ‖column‖` for the Wronskian matrix `W`.
    pub wronskian_threshold: f64,
    /// Bound on `|ratio - 1|` at the largest sample of the asymptotic check.
    pub asymptotic_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            quad: QuadConfig { rel_tol: 1e-12, abs_tol: 0.0, max_nodes: 20_000 },
            tol: 1e-6,
            fd_step: 1e-4,
            wronskian_threshold: 1e-10,
            asymptotic_tol: 1e-2,
        }
    }
}

/// Outcome at one sample of `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleDetail {
    pub lambda: Complex64,
    pub residual: f64,
    /// Quadrature diagnostics or other remarks; empty when there are none.
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub instance: String,
    pub lambdas: Vec<Complex64>,
    pub max_relative_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: Vec<SampleDetail>,
}

impl CheckReport {
    fn new(name: &str, g: &Geometry, tolerance: f64, details: Vec<SampleDetail>) -> Self {
        let max = details.iter().map(|d| d.residual).fold(0.0, |a: f64, r| if r.is_nan() { f64::INFINITY } else { a.max(r) });
        Self {
            name: name.into(),
            instance: describe(g),
            lambdas: details.iter().map(|d| d.lambda).collect(),
            max_relative_residual: max,
            tolerance,
            pass: max <= tolerance,
            details,
        }
    }
}

/// Short human-readable summary of an arrangement.
pub fn describe(g: &Geometry) -> String {
    let arr = g.arrangement();
    let w: Vec<String> = arr.weights().iter().map(|a| format!("{a}")).collect();
    format!("k={}, N={}, weights=[{}]", arr.dim(), arr.len(), w.join(", "))
}

/// Collects quadrature values of one sample and remembers failures.
struct Sample<'a> {
    cfg: &'a QuadConfig,
    note: Vec<String>,
    failed: bool,
}

impl<'a> Sample<'a> {
    fn new(cfg: &'a QuadConfig) -> Self {
        Self { cfg, note: Vec::new(), failed: false }
    }

    fn take(&mut self, what: &str, r: Result<IntegralValue, Error>) -> Complex64 {
        match r {
            Ok(v) => {
                if !v.converged {
                    self.failed = true;
                    self.note.push(format!("{what}: quadrature did not converge (error {:.2e})", v.error_estimate));
                }
                v.value
            }
            Err(e) => {
                self.failed = true;
                self.note.push(format!("{what}: {e}"));
                Complex64::new(f64::NAN, f64::NAN)
            }
        }
    }

    fn chamber(&mut self, g: &Geometry, c: usize, xp: usize, lambda: Complex64) -> Complex64 {
        self.take(&format!("chamber {c}, form {xp}"), integrate_chamber(g, c, xp, lambda, self.cfg))
    }

    fn plus(&mut self, g: &Geometry, x: usize, xp: usize, lambda: Complex64) -> Complex64 {
        self.take(&format!("I+ {x},{xp}"), i_plus(g, x, xp, lambda, self.cfg))
    }

    fn minus(&mut self, g: &Geometry, x: usize, xp: usize, lambda: Complex64) -> Complex64 {
        self.take(&format!("I- {x},{xp}"), i_minus(g, x, xp, lambda, self.cfg))
    }

    fn finish(self, lambda: Complex64, residual: f64) -> SampleDetail {
        SampleDetail {
            lambda,
            residual: if self.failed { f64::INFINITY } else { residual },
            note: self.note.join("; "),
        }
    }
}

/// `|lhs - rhs| / max(scale, |lhs|, |rhs|)`.
fn relative(lhs: Complex64, rhs: Complex64, scale: f64) -> f64 {
    (lhs - rhs).norm() / scale.max(lhs.norm()).max(rhs.norm()).max(FLOOR)
}

fn real(l: &[f64]) -> Vec<Complex64> {
    l.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Central-difference test of `v' = -(A + B/λ) v` for every chamber vector
/// `(I_{Δ,X'})_{X'}`, `Δ ∈ D+`, and every cone vector `(I+_{X,X'})_{X'}`.
pub fn check_ode(an: &Analysis, lambdas: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let m = g.vertices().len();
    let ode = build_ode(g);
    let h = cfg.fd_step;
    let details = real(lambdas)
        .into_iter()
        .map(|lambda| {
            let mut s = Sample::new(&cfg.quad);
            let ode = match &ode {
                Ok(o) => o,
                Err(e) => {
                    s.failed = true;
                    s.note.push(format!("{e}"));
                    return s.finish(lambda, f64::INFINITY);
                }
            };
            let mut worst: f64 = 0.0;
            let chamber_vec = |s: &mut Sample, c: usize, l: Complex64| -> Vec<Complex64> {
                (0..m).map(|xp| s.chamber(g, c, xp, l)).collect()
            };
            let cone_vec = |s: &mut Sample, x: usize, l: Complex64| -> Vec<Complex64> {
                (0..m).map(|xp| s.plus(g, x, xp, l)).collect()
            };
            let evaluators: [(&dyn Fn(&mut Sample, usize, Complex64) -> Vec<Complex64>, Vec<usize>); 2] =
                [(&chamber_vec, g.dplus().to_vec()), (&cone_vec, (0..m).collect())];
            for (eval, targets) in evaluators {
                for t in targets {
                    let v = eval(&mut s, t, lambda);
                    let vp = eval(&mut s, t, lambda + h);
                    let vm = eval(&mut s, t, lambda - h);
                    let deriv: Vec<Complex64> = vp.iter().zip(&vm).map(|(a, b)| (a - b) / (2.0 * h)).collect();
                    let rhs = ode.rhs(lambda, &v);
                    let scale = max_norm(&deriv).max(max_norm(&rhs));
                    let diff: Vec<Complex64> = deriv.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                    worst = worst.max(max_norm(&diff) / scale.max(FLOOR));
                }
            }
            s.finish(lambda, worst)
        })
        .collect();
    CheckReport::new("ode", g, cfg.tol, details)
}

/// `I±_{X,X'} = Σ_{Δ ⊆ C+_X} η(X,Δ)^{±1} I_{Δ,X'}` at real positive `λ`.
pub fn check_decomposition(an: &Analysis, lambdas: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let w = g.arrangement().weights();
    let m = g.vertices().len();
    let details = real(lambdas)
        .into_iter()
        .map(|lambda| {
            let mut s = Sample::new(&cfg.quad);
            let mut worst: f64 = 0.0;
            for x in 0..m {
                let cone = g.chambers_in_cone(x);
                let phases: Vec<Complex64> = cone
                    .iter()
                    .map(|&c| match eta(g, x, c) {
                        Ok(p) => p.as_complex(w),
                        Err(e) => {
                            s.failed = true;
                            s.note.push(format!("{e}"));
                            Complex64::new(f64::NAN, 0.0)
                        }
                    })
                    .collect();
                for xp in 0..m {
                    let terms: Vec<Complex64> = cone.iter().map(|&c| s.chamber(g, c, xp, lambda)).collect();
                    let scale = max_norm(&terms);
                    let plus: Complex64 = terms.iter().zip(&phases).map(|(t, p)| t * p).sum();
                    let minus: Complex64 = terms.iter().zip(&phases).map(|(t, p)| t * p.conj()).sum();
                    let ip = s.plus(g, x, xp, lambda);
                    let im = s.minus(g, x, xp, lambda);
                    worst = worst.max(relative(ip, plus, scale)).max(relative(im, minus, scale));
                }
            }
            s.finish(lambda, worst)
        })
        .collect();
    CheckReport::new("decomposition", g, cfg.tol, details)
}

/// `I_{Δ,X'} = Σ_{X ∈ ∂Δ} ψ(Δ,X)^{±1} I±_{X,X'}` at real positive `λ`.
pub fn check_inversion(an: &Analysis, lambdas: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let w = g.arrangement().weights();
    let m = g.vertices().len();
    let details = real(lambdas)
        .into_iter()
        .map(|lambda| {
            let mut s = Sample::new(&cfg.quad);
            let mut worst: f64 = 0.0;
            for &c in g.dplus() {
                let boundary = g.boundary_vertices(c);
                let phases: Vec<Complex64> = boundary
                    .iter()
                    .map(|&x| match psi(g, c, x) {
                        Ok(p) => p.as_complex(w),
                        Err(e) => {
                            s.failed = true;
                            s.note.push(format!("{e}"));
                            Complex64::new(f64::NAN, 0.0)
                        }
                    })
                    .collect();
                for xp in 0..m {
                    let value = s.chamber(g, c, xp, lambda);
                    let plus: Vec<Complex64> = boundary.iter().map(|&x| s.plus(g, x, xp, lambda)).collect();
                    let minus: Vec<Complex64> = boundary.iter().map(|&x| s.minus(g, x, xp, lambda)).collect();
                    let scale = max_norm(&plus).max(max_norm(&minus));
                    let via_plus: Complex64 = plus.iter().zip(&phases).map(|(t, p)| t * p).sum();
                    let via_minus: Complex64 = minus.iter().zip(&phases).map(|(t, p)| t * p.conj()).sum();
                    worst = worst.max(relative(value, via_plus, scale)).max(relative(value, via_minus, scale));
                }
            }
            s.finish(lambda, worst)
        })
        .collect();
    CheckReport::new("inversion", g, cfg.tol, details)
}

/// `I-_X = Σ_{X'} C0(X', X) I+_{X'}` at real positive `λ`.
pub fn check_stokes_c0(an: &Analysis, lambdas: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let m = g.vertices().len();
    let st = stokes_matrices(an);
    let details = real(lambdas)
        .into_iter()
        .map(|lambda| {
            let mut s = Sample::new(&cfg.quad);
            let plus: Vec<Vec<Complex64>> = (0..m).map(|y| (0..m).map(|xp| s.plus(g, y, xp, lambda)).collect()).collect();
            let scale = plus.iter().map(|row| max_norm(row)).fold(0.0, f64::max);
            let mut worst: f64 = 0.0;
            for x in 0..m {
                for xp in 0..m {
                    let lhs = s.minus(g, x, xp, lambda);
                    let rhs: Complex64 = (0..m).map(|y| st.c0[y][x] * plus[y][xp]).sum();
                    worst = worst.max(relative(lhs, rhs, scale));
                }
            }
            s.finish(lambda, worst)
        })
        .collect();
    CheckReport::new("stokes_c0", g, cfg.tol, details)
}

/// `e^{2πiα_X} I+_X = Σ_{X'} C1(X', X) I-_{X'}` at real negative `λ`.
pub fn check_stokes_c1(an: &Analysis, lambdas: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let arr = g.arrangement();
    let m = g.vertices().len();
    let st = stokes_matrices(an);
    let details = real(lambdas)
        .into_iter()
        .map(|lambda| {
            let mut s = Sample::new(&cfg.quad);
            let minus: Vec<Vec<Complex64>> =
                (0..m).map(|y| (0..m).map(|xp| s.minus(g, y, xp, lambda)).collect()).collect();
            let scale = minus.iter().map(|row| max_norm(row)).fold(0.0, f64::max);
            let mut worst: f64 = 0.0;
            for x in 0..m {
                let monodromy = Complex64::from_polar(1.0, 2.0 * PI * arr.weight_sum(&g.vertex(x).indices));
                for xp in 0..m {
                    let lhs = monodromy * s.plus(g, x, xp, lambda);
                    let rhs: Complex64 = (0..m).map(|y| st.c1[y][x] * minus[y][xp]).sum();
                    worst = worst.max(relative(lhs, rhs, scale));
                }
            }
            s.finish(lambda, worst)
        })
        .collect();
    CheckReport::new("stokes_c1", g, cfg.tol, details)
}

/// `λ ∫_Δ e^{-λ f0} ∏|f_j|^{α_j} df0 ∧ ω_U = Σ_{j∉U} ε(j,U) α_j I_{Δ,U∪{j}}`
/// for one chamber `c ∈ D+` and one set `U` of `k - 1` hyperplanes.
pub fn check_cohomological(an: &Analysis, c: usize, u: &[usize], lambdas: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let details = real(lambdas).into_iter().map(|lambda| cohomological_sample(g, c, u, lambda, cfg)).collect();
    CheckReport::new("cohomological", g, cfg.tol, details)
}

fn cohomological_sample(g: &Geometry, c: usize, u: &[usize], lambda: Complex64, cfg: &VerifyConfig) -> SampleDetail {
    let arr = g.arrangement();
    let mut s = Sample::new(&cfg.quad);
    let lhs = match ChamberForm::cohomological(arr, u) {
        Ok(form) => lambda * s.take("left side", integrate_chamber_form(g, c, &form, lambda, &cfg.quad)),
        Err(e) => {
            s.failed = true;
            s.note.push(format!("{e}"));
            return s.finish(lambda, f64::INFINITY);
        }
    };
    let mut terms = Vec::new();
    for j in (0..arr.len()).filter(|j| !u.contains(j)) {
        let mut set = u.to_vec();
        set.push(j);
        set.sort_unstable();
        let (Some(xp), Ok(eps)) = (g.vertex_index(&set), epsilon_single(arr, j, u)) else {
            s.failed = true;
            s.note.push(format!("no vertex for hyperplanes {set:?}"));
            continue;
        };
        terms.push(s.chamber(g, c, xp, lambda) * (f64::from(eps) * arr.weights()[j]));
    }
    let rhs: Complex64 = terms.iter().sum();
    let residual = relative(lhs, rhs, max_norm(&terms));
    s.finish(lambda, residual)
}

/// The cohomological relation for every `Δ ∈ D+` and every `U` of size
/// `k - 1` contained in a vertex on the closure of `Δ`.
pub fn check_cohomological_all(an: &Analysis, lambdas: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let mut details = Vec::new();
    for lambda in real(lambdas) {
        let mut worst: f64 = 0.0;
        let mut notes = Vec::new();
        for &c in g.dplus() {
            let mut sets: Vec<Vec<usize>> = Vec::new();
            for x in g.boundary_vertices(c) {
                let idx = &g.vertex(x).indices;
                for skip in 0..idx.len() {
                    let mut u = idx.clone();
                    u.remove(skip);
                    if !sets.contains(&u) {
                        sets.push(u);
                    }
                }
            }
            for u in sets {
                let d = cohomological_sample(g, c, &u, lambda, cfg);
                worst = worst.max(if d.residual.is_nan() { f64::INFINITY } else { d.residual });
                if !d.note.is_empty() {
                    notes.push(d.note);
                }
            }
        }
        details.push(SampleDetail { lambda, residual: worst, note: notes.join("; ") });
    }
    CheckReport::new("cohomological", g, cfg.tol, details)
}

/// Non-vanishing of `det(I_{Δ,X'}(λ0))_{Δ∈D+, X'}`. The residual is
/// `∏‖column‖ / |det|`, so the check passes when it stays below
/// `1 / wronskian_threshold`.
pub fn check_wronskian(an: &Analysis, lambda0: f64, cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let m = g.vertices().len();
    let lambda = Complex64::new(lambda0, 0.0);
    let mut s = Sample::new(&cfg.quad);
    let rows: Vec<Vec<Complex64>> = g.dplus().iter().map(|&c| (0..m).map(|xp| s.chamber(g, c, xp, lambda)).collect()).collect();
    let det = complex_det(&rows);
    let norms: f64 = (0..m).map(|j| libm::sqrt(rows.iter().map(|r| r[j].norm_sqr()).sum::<f64>())).product();
    let ratio = det.norm() / norms.max(FLOOR);
    s.note.push(format!("|det| = {:.6e}, normalized = {:.6e}", det.norm(), ratio));
    let residual = if ratio > 0.0 { 1.0 / ratio } else { f64::INFINITY };
    CheckReport::new("wronskian", g, 1.0 / cfg.wronskian_threshold, vec![s.finish(lambda, residual)])
}

/// Leading behaviour `I+_{X,X}(λ) ≈ σ_X D_{X,X} e^{-λ f0(X)} λ^{-α_X}` along an
/// ascending grid; the residual of the check is `|ratio - 1|` at the largest
/// `λ`, earlier samples are reported for context.
pub fn check_asymptotics(an: &Analysis, grid: &[f64], cfg: &VerifyConfig) -> CheckReport {
    let g = &an.plus;
    let arr = g.arrangement();
    let m = g.vertices().len();
    let last = grid.len().saturating_sub(1);
    let mut details: Vec<SampleDetail> = grid
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let lambda = Complex64::new(l, 0.0);
            let mut s = Sample::new(&cfg.quad);
            let mut worst: f64 = 0.0;
            for x in 0..m {
                let v = g.vertex(x);
                let sign: f64 = g.cone_signs(x).iter().map(|&c| f64::from(c)).product();
                let d = asymptotic_constants(g, x, x).d * sign;
                let alpha = arr.weight_sum(&v.indices);
                let value = s.plus(g, x, x, lambda);
                let normalized = value * libm::exp(l * v.f0_f64()) * libm::pow(l, alpha) / d;
                worst = worst.max((normalized - 1.0).norm());
                if i == last {
                    let off = (0..m)
                        .filter(|&xp| xp != x)
                        .map(|xp| s.plus(g, x, xp, lambda).norm() / value.norm().max(FLOOR))
                        .fold(0.0, f64::max);
                    s.note.push(format!("vertex {x}: ratio {normalized:.8}, max |I+_(X,X')/I+_(X,X)| = {off:.3e}"));
                }
            }
            s.finish(lambda, worst)
        })
        .collect();
    let mut report = CheckReport::new("asymptotics", g, cfg.asymptotic_tol, Vec::new());
    report.lambdas = details.iter().map(|d| d.lambda).collect();
    report.max_relative_residual = details.last().map_or(0.0, |d| d.residual);
    report.pass = report.max_relative_residual <= report.tolerance;
    report.details = core::mem::take(&mut details);
    report
}

/// Default samples: identities at `{1, 2, 5}`, `C1` at `{-1, -2}`, the
/// Wronskian at 1 and the asymptotic grid `{5, 10, 20, 50}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub identities: Vec<f64>,
    pub negative: Vec<f64>,
    pub wronskian: f64,
    pub asymptotic: Vec<f64>,
}

impl Default for SampleSet {
    fn default() -> Self {
        Self { identities: vec![1.0, 2.0, 5.0], negative: vec![-1.0, -2.0], wronskian: 1.0, asymptotic: vec![5.0, 10.0, 20.0, 50.0] }
    }
}

/// Runs one named check.
pub fn run_check(an: &Analysis, name: &str, samples: &SampleSet, cfg: &VerifyConfig) -> Result<CheckReport, Error> {
    Ok(match name {
        "ode" => check_ode(an, &samples.identities, cfg),
        "decomposition" => check_decomposition(an, &samples.identities, cfg),
        "inversion" => check_inversion(an, &samples.identities, cfg),
        "stokes_c0" => check_stokes_c0(an, &samples.identities, cfg),
        "stokes_c1" => check_stokes_c1(an, &samples.negative, cfg),
        "cohomological" => check_cohomological_all(an, &samples.identities, cfg),
        "wronskian" => check_wronskian(an, samples.wronskian, cfg),
        "asymptotics" => check_asymptotics(an, &samples.asymptotic, cfg),
        other => return Err(Error::Domain(format!("unknown check {other:?}"))),
    })
}
