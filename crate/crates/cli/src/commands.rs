//! The subcommands, independent of argument parsing and process exit.

use std::time::Instant;

use hypstokes::arrangement::{line_arrangement, triangle_arrangement};
use hypstokes::ode::build_ode;
use hypstokes::quadrature::{i_minus, i_plus, integrate_chamber, rho_minus, rho_plus};
use hypstokes::random::random_weights;
use hypstokes::stokes::{example1_oracle, example2_oracle, max_entry_difference, stokes_matrices};
use hypstokes::verify::{run_check, SampleSet, VerifyConfig, CHECK_NAMES};
use hypstokes::{Analysis, Arrangement, Complex64, QuadConfig, Rational};
use log::info;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::wire::{
    pair, parse_rational, ArrangementSpec, CheckRecord, CliError, IntegralRecord, OdeRecord, OracleRecord,
    ResultBundle, StokesRecord,
};

/// Settings shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Options {
    /// Seeds the weights drawn by `demo` when none are given.
    pub seed: u64,
    /// Relative quadrature tolerance; each command has its own default.
    pub quad_tol: Option<f64>,
    pub max_nodes: Option<usize>,
}

impl Options {
    fn quad(&self, default: QuadConfig) -> QuadConfig {
        QuadConfig {
            rel_tol: self.quad_tol.unwrap_or(default.rel_tol),
            max_nodes: self.max_nodes.unwrap_or(default.max_nodes),
            ..default
        }
    }
}

fn analysis(spec: &ArrangementSpec) -> Result<Analysis, CliError> {
    let arr = spec.to_arrangement()?;
    let start = Instant::now();
    let an = Analysis::new(&arr)?;
    info!(
        "{} vertices, {} chambers in {:.2?}",
        an.plus.vertices().len(),
        an.plus.chambers().len(),
        start.elapsed()
    );
    Ok(an)
}

/// Vertices, chambers, `D+` and the classification of every vertex pair.
pub fn analyze(spec: &ArrangementSpec) -> Result<ResultBundle, CliError> {
    Ok(ResultBundle::combinatorics("analyze", &analysis(spec)?))
}

fn with_matrices(command: &str, an: &Analysis) -> Result<ResultBundle, CliError> {
    let mut bundle = ResultBundle::combinatorics(command, an);
    bundle.ode = Some(OdeRecord::from(&build_ode(&an.plus)?));
    bundle.stokes = Some(StokesRecord::from(&stokes_matrices(an)));
    Ok(bundle)
}

/// [`analyze`] plus the ODE matrices and both Stokes matrices.
pub fn stokes(spec: &ArrangementSpec) -> Result<ResultBundle, CliError> {
    with_matrices("stokes", &analysis(spec)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralKind {
    /// `I_{Δ_X, X'}` over the chamber of the target vertex.
    Chamber,
    ConePlus,
    ConeMinus,
}

impl IntegralKind {
    fn name(self) -> &'static str {
        match self {
            IntegralKind::Chamber => "chamber",
            IntegralKind::ConePlus => "cone_plus",
            IntegralKind::ConeMinus => "cone_minus",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralRequest {
    pub kind: IntegralKind,
    /// 1-based hyperplanes of the vertex `X`.
    pub target: Vec<usize>,
    /// 1-based hyperplanes of `X'`; defaults to the target.
    pub form: Option<Vec<usize>>,
    pub lambda: Complex64,
}

fn locate_vertex(an: &Analysis, one_based: &[usize], what: &str) -> Result<usize, CliError> {
    let n = an.arrangement().len();
    if one_based.iter().any(|&j| j == 0 || j > n) {
        return Err(CliError::Request(format!("{what} {one_based:?}: hyperplane indices run from 1 to {n}")));
    }
    let mut indices: Vec<usize> = one_based.iter().map(|j| j - 1).collect();
    indices.sort_unstable();
    an.plus
        .vertex_index(&indices)
        .ok_or_else(|| CliError::Request(format!("{what} {one_based:?} is not a vertex of the arrangement")))
}

/// Evaluates one integral with its error estimate.
pub fn integrate(spec: &ArrangementSpec, req: &IntegralRequest, opts: &Options) -> Result<IntegralRecord, CliError> {
    let an = analysis(spec)?;
    let g = &an.plus;
    let x = locate_vertex(&an, &req.target, "target")?;
    let form = req.form.clone().unwrap_or_else(|| req.target.clone());
    let xp = locate_vertex(&an, &form, "form")?;
    let cfg = opts.quad(QuadConfig { rel_tol: 1e-12, ..QuadConfig::default() });
    let lambda = req.lambda;
    let mut record = IntegralRecord {
        kind: req.kind.name().to_string(),
        target: g.vertex(x).indices.iter().map(|j| j + 1).collect(),
        form: g.vertex(xp).indices.iter().map(|j| j + 1).collect(),
        chamber: None,
        lambda: pair(lambda),
        rho: None,
        value: [0.0, 0.0],
        error_estimate: 0.0,
        nodes_used: 0,
        converged: false,
    };
    let start = Instant::now();
    let value = match req.kind {
        IntegralKind::Chamber => {
            let c = g.delta(x);
            record.chamber = Some(c + 1);
            integrate_chamber(g, c, xp, lambda, &cfg)?
        }
        IntegralKind::ConePlus => {
            record.rho = Some(pair(rho_plus(lambda)?));
            i_plus(g, x, xp, lambda, &cfg)?
        }
        IntegralKind::ConeMinus => {
            record.rho = Some(pair(rho_minus(lambda)?));
            i_minus(g, x, xp, lambda, &cfg)?
        }
    };
    info!("{} integral: {} nodes in {:.2?}", record.kind, value.nodes_used, start.elapsed());
    record.fill(&value);
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyRequest {
    /// Check names, or `["all"]`.
    pub checks: Vec<String>,
    /// Sample points. Positive values feed the identity checks and the
    /// Wronskian; negative values feed the `C1` relation, which otherwise uses
    /// the mirrored positive values.
    pub lambdas: Vec<f64>,
    pub tol: Option<f64>,
}

fn selected_checks(requested: &[String]) -> Result<Vec<&'static str>, CliError> {
    if requested.is_empty() || requested.iter().any(|c| c == "all") {
        return Ok(CHECK_NAMES.to_vec());
    }
    let mut out = Vec::new();
    for name in requested {
        let known = CHECK_NAMES.iter().find(|c| **c == name.as_str()).ok_or_else(|| {
            CliError::Request(format!("unknown check {name:?}; expected one of {} or \"all\"", CHECK_NAMES.join(", ")))
        })?;
        if !out.contains(known) {
            out.push(*known);
        }
    }
    Ok(out)
}

fn sample_set(lambdas: &[f64]) -> Result<SampleSet, CliError> {
    let mut samples = SampleSet::default();
    if lambdas.is_empty() {
        return Ok(samples);
    }
    if let Some(bad) = lambdas.iter().find(|l| !l.is_finite() || **l == 0.0) {
        return Err(CliError::Request(format!("sample λ = {bad} is not a finite nonzero number")));
    }
    let positive: Vec<f64> = lambdas.iter().copied().filter(|l| *l > 0.0).collect();
    let negative: Vec<f64> = lambdas.iter().copied().filter(|l| *l < 0.0).collect();
    if !positive.is_empty() {
        samples.wronskian = positive[0];
        samples.identities = positive;
    }
    samples.negative = if negative.is_empty() { samples.identities.iter().map(|l| -l).collect() } else { negative };
    Ok(samples)
}

/// Runs the requested checks in parallel; the report order follows the request.
pub fn verify(spec: &ArrangementSpec, req: &VerifyRequest, opts: &Options) -> Result<ResultBundle, CliError> {
    let names = selected_checks(&req.checks)?;
    let samples = sample_set(&req.lambdas)?;
    let defaults = VerifyConfig::default();
    let cfg = VerifyConfig { quad: opts.quad(defaults.quad), tol: req.tol.unwrap_or(defaults.tol), ..defaults };
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err(CliError::Request(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    let an = analysis(spec)?;
    let reports = names
        .par_iter()
        .map(|name| {
            let start = Instant::now();
            let report = run_check(&an, name, &samples, &cfg)?;
            info!("check {name}: residual {:.3e} in {:.2?}", report.max_relative_residual, start.elapsed());
            Ok(CheckRecord::from(&report))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut bundle = ResultBundle::combinatorics("verify", &an);
    bundle.checks = reports;
    Ok(bundle)
}

fn demo_weights(given: Option<Vec<f64>>, n: usize, opts: &Options) -> Result<Vec<f64>, CliError> {
    match given {
        Some(w) if w.len() != n => Err(CliError::Request(format!("expected {n} weights, got {}", w.len()))),
        Some(w) => Ok(w),
        None => Ok(random_weights(&mut ChaCha8Rng::seed_from_u64(opts.seed), n)),
    }
}

fn demo_bundle(arr: &Arrangement, oracle: &str, difference: impl FnOnce(&Analysis) -> Result<f64, CliError>) -> Result<ResultBundle, CliError> {
    let an = Analysis::new(arr)?;
    let mut bundle = with_matrices("demo", &an)?;
    bundle.oracle = Some(OracleRecord { name: oracle.to_string(), max_entry_difference: difference(&an)? });
    Ok(bundle)
}

/// Points `0, 1, ..., n-1` on the line with `f0 = z`.
pub fn demo_example1(n: usize, weights: Option<Vec<f64>>, opts: &Options) -> Result<ResultBundle, CliError> {
    if n == 0 {
        return Err(CliError::Request("n must be at least 1".into()));
    }
    let weights = demo_weights(weights, n, opts)?;
    let points: Vec<Rational> = (0..n).map(|i| Rational::from_integer(i.into())).collect();
    let arr = line_arrangement(&points, weights.clone())?;
    demo_bundle(&arr, "example1", |an| {
        let pf: Vec<f64> = (0..n).map(|i| i as f64).collect();
        Ok(max_entry_difference(&stokes_matrices(an), &example1_oracle(&pf, &weights)?))
    })
}

/// The triangle `x = 0`, `y = 0`, `x + y = 1` with `f0 = ax + by`.
pub fn demo_example2(a: &str, b: &str, weights: Option<Vec<f64>>, opts: &Options) -> Result<ResultBundle, CliError> {
    let a = parse_rational(a).map_err(CliError::Request)?;
    let b = parse_rational(b).map_err(CliError::Request)?;
    let weights = demo_weights(weights, 3, opts)?;
    let arr = triangle_arrangement(a.clone(), b.clone(), weights.clone())?;
    demo_bundle(&arr, "example2", |an| {
        let to_f64 = hypstokes::linalg::to_f64;
        Ok(max_entry_difference(&stokes_matrices(an), &example2_oracle(to_f64(&a), to_f64(&b), &weights)?))
    })
}
