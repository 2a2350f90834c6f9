//! One-dimensional globally adaptive integration with algebraic endpoint
//! weights, nested freely for multidimensional integrals.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use num_complex::Complex64;

use super::rules::{gauss_jacobi, gauss_laguerre, Rule};
use super::{IntegralValue, QuadConfig};

const LOW: usize = 10;
const HIGH: usize = 20;
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

/// Shape of the integration axis, including the weight the integrator
/// applies on top of the user function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    /// `∫_0^1 g(t) t^left (1-t)^right dt`.
    Finite { left: f64, right: f64 },
    /// `∫_0^∞ g(t) t^left e^{-rate t} dt` with `rate > 0`.
    SemiInfinite { left: f64, rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum RuleKey {
    Jacobi(usize, u64, u64),
    Laguerre(usize, u64),
}

/// Rule cache shared by every level of a nested integration.
#[derive(Debug, Default)]
pub struct Integrator {
    cache: RefCell<BTreeMap<RuleKey, Rc<Rule>>>,
}

#[derive(Clone, Copy)]
struct Tail {
    left: f64,
    rate: f64,
    start: f64,
    value: Complex64,
    error: f64,
    magnitude: f64,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    magnitude: f64,
}

impl Integrator {
    pub fn new() -> Self {
        Self::default()
    }

    fn rule(&self, key: RuleKey) -> Rc<Rule> {
        if let Some(r) = self.cache.borrow().get(&key) {
            return r.clone();
        }
        let r = Rc::new(match key {
            RuleKey::Jacobi(n, a, b) => gauss_jacobi(n, f64::from_bits(a), f64::from_bits(b)),
            RuleKey::Laguerre(n, a) => gauss_laguerre(n, f64::from_bits(a)),
        });
        self.cache.borrow_mut().insert(key, r.clone());
        r
    }

    fn jacobi(&self, n: usize, a: f64, b: f64) -> Rc<Rule> {
        self.rule(RuleKey::Jacobi(n, a.to_bits(), b.to_bits()))
    }

    /// Both rule levels on `[a, b]`. Singular endpoint exponents go into the
    /// Jacobi weight only on panels touching that endpoint.
    fn panel<F: Fn(f64) -> Complex64>(&self, axis: Axis, a: f64, b: f64, f: &F) -> (Complex64, Complex64, f64) {
        let (left, right, finite, rate) = match axis {
            Axis::Finite { left, right } => (left, right, true, 0.0),
            Axis::SemiInfinite { left, rate } => (left, 0.0, false, rate),
        };
        let touch0 = a == 0.0 && left != 0.0;
        let touch1 = finite && b == 1.0 && right != 0.0;
        let jl = if touch0 { left } else { 0.0 };
        let jr = if touch1 { right } else { 0.0 };
        let half = 0.5 * (b - a);
        let mut scale = half;
        if touch0 {
            scale *= libm::pow(half, left);
        }
        if touch1 {
            scale *= libm::pow(half, right);
        }
        let eval = |n: usize| -> (Complex64, f64) {
            let rule = self.jacobi(n, jr, jl);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let t = a + half * (1.0 + x);
                let mut weight = *w;
                if !touch0 && left != 0.0 {
                    weight *= libm::pow(t, left);
                }
                if finite {
                    if !touch1 && right != 0.0 {
                        weight *= libm::pow(1.0 - t, right);
                    }
                } else {
                    weight *= libm::exp(-rate * t);
                }
                let v = f(t) * weight;
                mag += v.norm();
                acc += v;
            }
            (acc * scale, mag * scale.abs())
        };
        let (lo, hi) = (eval(LOW), eval(HIGH));
        (lo.0, hi.0, hi.1)
    }

    /// `∫_T^∞ g(t) t^left e^{-rate t} dt` by Gauss–Laguerre in `s = rate (t - T)`.
    fn tail<F: Fn(f64) -> Complex64>(&self, left: f64, rate: f64, start: f64, f: &F) -> (Complex64, Complex64, f64) {
        let factor = libm::exp(-rate * start) / rate;
        let eval = |n: usize| -> (Complex64, f64) {
            let rule = self.rule(RuleKey::Laguerre(n, 0f64.to_bits()));
            let mut acc = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for (s, w) in rule.nodes.iter().zip(&rule.weights) {
                let t = start + s / rate;
                let v = f(t) * (w * libm::pow(t, left));
                mag += v.norm();
                acc += v;
            }
            (acc * factor, mag * factor)
        };
        let (lo, hi) = (eval(LOW), eval(HIGH));
        (lo.0, hi.0, hi.1)
    }

    /// Integrates `f` against the weight of `axis`.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, axis: Axis, cfg: &QuadConfig, f: F) -> IntegralValue {
        self.integrate_with_magnitude(axis, cfg, f).0
    }

    /// Also returns an estimate of `∫|f|`. The stopping rule accepts an error
    /// at roundoff level relative to that magnitude, which is all that can
    /// be resolved when the integral cancels.
    fn integrate_with_magnitude<F: Fn(f64) -> Complex64>(&self, axis: Axis, cfg: &QuadConfig, f: F) -> (IntegralValue, f64) {
        let (breaks, tail) = match axis {
            Axis::Finite { .. } => (Vec::from([0.0, 0.5, 1.0]), None),
            Axis::SemiInfinite { rate, left } => {
                let t = 30.0 / rate;
                (Vec::from([0.0, t / 16.0, t / 8.0, t / 4.0, t / 2.0, t]), Some((left, rate, t)))
            }
        };
        let mut nodes_used = 0;
        let mut panels: Vec<Panel> = breaks
            .windows(2)
            .map(|w| {
                let (lo, hi, mag) = self.panel(axis, w[0], w[1], &f);
                nodes_used += LOW + HIGH;
                Panel { a: w[0], b: w[1], value: hi, error: (hi - lo).norm(), magnitude: mag }
            })
            .collect();
        let mut tail = tail.map(|(left, rate, start)| {
            let (lo, hi, mag) = self.tail(left, rate, start, &f);
            nodes_used += LOW + HIGH;
            Tail { left, rate, start, value: hi, error: (hi - lo).norm(), magnitude: mag }
        });
        loop {
            let (tv, te, tm) = tail.as_ref().map_or((Complex64::new(0.0, 0.0), 0.0, 0.0), |t| (t.value, t.error, t.magnitude));
            let value: Complex64 = panels.iter().map(|p| p.value).sum::<Complex64>() + tv;
            let error: f64 = panels.iter().map(|p| p.error).sum::<f64>() + te;
            let magnitude: f64 = panels.iter().map(|p| p.magnitude).sum::<f64>() + tm;
            let target = cfg.abs_tol.max(cfg.rel_tol * value.norm()).max(ROUNDOFF * magnitude);
            let done = |converged| (IntegralValue { value, error_estimate: error, nodes_used, converged }, magnitude);
            if error <= target || !error.is_finite() {
                return done(error.is_finite());
            }
            if nodes_used + 2 * (LOW + HIGH) > cfg.max_nodes {
                return done(false);
            }
            let worst = panels
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
                .map(|(i, _)| i)
                .expect("at least one panel");
            if let Some(t) = tail.as_mut().filter(|t| t.error > panels[worst].error) {
                // Move the start of the Laguerre tail outwards; the vacated
                // stretch becomes an ordinary panel.
                let end = 2.0 * t.start;
                let (lo, hi, mag) = self.panel(axis, t.start, end, &f);
                panels.push(Panel { a: t.start, b: end, value: hi, error: (hi - lo).norm(), magnitude: mag });
                let (lo, hi, mag) = self.tail(t.left, t.rate, end, &f);
                *t = Tail { start: end, value: hi, error: (hi - lo).norm(), magnitude: mag, ..*t };
                nodes_used += 2 * (LOW + HIGH);
                continue;
            }
            let p = panels.swap_remove(worst);
            let mid = 0.5 * (p.a + p.b);
            if !(mid > p.a && mid < p.b) {
                return done(false);
            }
            for (lo_end, hi_end) in [(p.a, mid), (mid, p.b)] {
                let (lo, hi, mag) = self.panel(axis, lo_end, hi_end, &f);
                nodes_used += LOW + HIGH;
                panels.push(Panel { a: lo_end, b: hi_end, value: hi, error: (hi - lo).norm(), magnitude: mag });
            }
        }
    }
}

impl Integrator {
    /// Iterated integral over a product of axes, the first axis outermost.
    /// Inner levels run at a tighter tolerance; their worst relative error is
    /// added to the reported estimate.
    pub fn integrate_nested(&self, axes: &[Axis], cfg: &QuadConfig, f: &dyn Fn(&[f64]) -> Complex64) -> IntegralValue {
        assert!(!axes.is_empty(), "at least one axis");
        let state = NestState {
            point: RefCell::new(vec![0.0; axes.len()]),
            inner_ok: Cell::new(true),
            inner_rel: Cell::new(0.0),
            inner_nodes: Cell::new(0),
        };
        let (outer, magnitude) = self.nest(0, axes, cfg, f, &state);
        let inner_rel = state.inner_rel.get();
        IntegralValue {
            value: outer.value,
            error_estimate: outer.error_estimate + inner_rel * magnitude,
            nodes_used: outer.nodes_used + state.inner_nodes.get(),
            converged: outer.converged && state.inner_ok.get(),
        }
    }

    fn nest(
        &self,
        level: usize,
        axes: &[Axis],
        cfg: &QuadConfig,
        f: &dyn Fn(&[f64]) -> Complex64,
        state: &NestState,
    ) -> (IntegralValue, f64) {
        let last = level + 1 == axes.len();
        let level_cfg = if level == 0 { *cfg } else { cfg.inner() };
        self.integrate_with_magnitude(axes[level], &level_cfg, |t| {
            state.point.borrow_mut()[level] = t;
            if last {
                let p = state.point.borrow().clone();
                f(&p)
            } else {
                let (v, mag) = self.nest(level + 1, axes, cfg, f, state);
                if !v.converged {
                    state.inner_ok.set(false);
                }
                if mag > 0.0 {
                    state.inner_rel.set(state.inner_rel.get().max(v.error_estimate / mag));
                }
                state.inner_nodes.set(state.inner_nodes.get() + v.nodes_used);
                v.value
            }
        })
    }
}

struct NestState {
    point: RefCell<Vec<f64>>,
    inner_ok: Cell<bool>,
    inner_rel: Cell<f64>,
    inner_nodes: Cell<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig {
        QuadConfig { rel_tol: 1e-13, abs_tol: 0.0, max_nodes: 100_000 }
    }

    #[test]
    fn beta_integral_with_both_endpoint_singularities() {
        let q = Integrator::new();
        let (a, b) = (-0.6, -0.3);
        let r = q.integrate(Axis::Finite { left: a, right: b }, &cfg(), |_| Complex64::new(1.0, 0.0));
        let exact = libm::exp(libm::lgamma(a + 1.0) + libm::lgamma(b + 1.0) - libm::lgamma(a + b + 2.0));
        assert!((r.value.re - exact).abs() < 1e-13 * exact);
        assert!(r.converged);
    }

    #[test]
    fn gamma_integral_on_half_line() {
        let q = Integrator::new();
        let r = q.integrate(Axis::SemiInfinite { left: -0.65, rate: 2.0 }, &cfg(), |_| Complex64::new(1.0, 0.0));
        let exact = libm::tgamma(0.35) * libm::pow(2.0, -0.35);
        assert!((r.value.re - exact).abs() < 1e-12 * exact, "{} vs {exact}", r.value.re);
    }

    #[test]
    fn oscillatory_exponential() {
        let q = Integrator::new();
        let lam = Complex64::new(1.0, 0.7);
        let r = q.integrate(Axis::SemiInfinite { left: 0.0, rate: 1.0 }, &cfg(), |t| {
            (Complex64::new(0.0, -0.7) * t).exp()
        });
        assert!((r.value - lam.inv()).norm() < 1e-12);
    }

    #[test]
    fn interior_kink_is_refined() {
        let q = Integrator::new();
        let r = q.integrate(
            Axis::Finite { left: 0.0, right: 0.0 },
            &QuadConfig { rel_tol: 1e-10, abs_tol: 0.0, max_nodes: 100_000 },
            |t| Complex64::new((t - 0.3).abs().sqrt(), 0.0),
        );
        let exact = (2.0 / 3.0) * (libm::pow(0.3, 1.5) + libm::pow(0.7, 1.5));
        assert!((r.value.re - exact).abs() < 1e-9);
    }

    #[test]
    fn nested_product_of_gammas() {
        let q = Integrator::new();
        let axes = [Axis::SemiInfinite { left: -0.5, rate: 1.0 }, Axis::Finite { left: -0.3, right: 0.2 }];
        let r = q.integrate_nested(&axes, &cfg(), &|p: &[f64]| Complex64::new(1.0 + p[0] * p[1], 0.0));
        let b = |x: f64, y: f64| libm::exp(libm::lgamma(x) + libm::lgamma(y) - libm::lgamma(x + y));
        let exact = libm::tgamma(0.5) * b(0.7, 1.2) + libm::tgamma(1.5) * b(1.7, 1.2);
        assert!((r.value.re - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let q = Integrator::new();
        let r = q.integrate(
            Axis::Finite { left: 0.0, right: 0.0 },
            &QuadConfig { rel_tol: 1e-15, abs_tol: 0.0, max_nodes: 100 },
            |t| Complex64::new((t - 0.3).abs().sqrt(), 0.0),
        );
        assert!(!r.converged);
    }
}
