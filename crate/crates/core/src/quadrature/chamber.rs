//! Chamber integrals `∫_Δ e^{-λ f0} ∏|f_j|^{α_j} ω` for chambers of `D+`.
//!
//! Lines: an interval or a ray with both singular endpoints in the weight.
//! Planes: the part of the chamber below a level of `f0` is fanned into
//! triangles around its centroid, each mapped to the unit square by a Duffy
//! transform so that the hyperplanes through a corner become coordinate
//! faces; the part above is a ruled strip between the two unbounded edges.
//! Higher dimensions fall back to randomized quasi-Monte Carlo.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};

use super::adaptive::{Axis, Integrator};
use super::{IntegralValue, QuadConfig};
use crate::arrangement::Arrangement;
use crate::geometry::Geometry;
use crate::linalg::{abs, det, sign, to_f64};
use crate::{Error, Rational};

/// A logarithmic `k`-form `prefactor · dz / ∏_{j∈divisors} f_j`, where `dz`
/// is the standard volume form.
#[derive(Debug, Clone, PartialEq)]
pub struct ChamberForm {
    pub divisors: Vec<usize>,
    pub prefactor: f64,
}

impl ChamberForm {
    /// `ω_X`, positively oriented: `|det L_X| dz / ∏_{j∈X} f_j`.
    pub fn vertex(arr: &Arrangement, indices: &[usize]) -> Self {
        let d = det(&arr.linear_rows(indices));
        Self { divisors: indices.to_vec(), prefactor: to_f64(&abs(&d)) }
    }

    /// `df0 ∧ ω_U` for a set `U` of `k - 1` hyperplanes, oriented so that its
    /// density is positive where every `f_j`, `j ∈ U`, is positive.
    pub fn cohomological(arr: &Arrangement, u: &[usize]) -> Result<Self, Error> {
        if u.len() + 1 != arr.dim() {
            return Err(Error::Domain(format!("expected {} hyperplanes, got {}", arr.dim() - 1, u.len())));
        }
        let mut rows = vec![arr.f0().to_vec()];
        rows.extend(arr.linear_rows(u));
        Ok(Self { divisors: u.to_vec(), prefactor: to_f64(&abs(&det(&rows))) })
    }
}

/// Floating-point data of the integrand on one chamber.
struct Integrand {
    lin: Vec<Vec<f64>>,
    cst: Vec<f64>,
    f0: Vec<f64>,
    beta: Vec<f64>,
    scale: f64,
    lambda: Complex64,
}

impl Integrand {
    fn new(arr: &Arrangement, signs: &[i8], form: &ChamberForm, lambda: Complex64) -> Self {
        let mut beta = arr.weights().to_vec();
        let mut scale = form.prefactor;
        for &j in &form.divisors {
            beta[j] -= 1.0;
            scale *= f64::from(signs[j]);
        }
        Self {
            lin: arr.forms().iter().map(|f| f.linear.iter().map(to_f64).collect()).collect(),
            cst: arr.forms().iter().map(|f| to_f64(&f.constant)).collect(),
            f0: arr.f0().iter().map(to_f64).collect(),
            beta,
            scale,
            lambda,
        }
    }

    fn f(&self, j: usize, x: &[f64]) -> f64 {
        self.cst[j] + self.lin[j].iter().zip(x).map(|(a, b)| a * b).sum::<f64>()
    }

    fn l(&self, j: usize, d: &[f64]) -> f64 {
        self.lin[j].iter().zip(d).map(|(a, b)| a * b).sum()
    }

    fn f0(&self, x: &[f64]) -> f64 {
        self.f0.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    fn pow(&self, j: usize, v: f64) -> f64 {
        libm::pow(v.abs(), self.beta[j])
    }

    fn exp(&self, s: f64) -> Complex64 {
        (-self.lambda * s).exp()
    }
}

fn point_f64(p: &[Rational]) -> Vec<f64> {
    p.iter().map(to_f64).collect()
}

/// `∫_Δ e^{-λ f0} ∏|f_j|^{α_j} ω_{X'}` for `Δ = chambers[c]` in `D+` and the
/// vertex `xp`.
pub fn integrate_chamber(g: &Geometry, c: usize, xp: usize, lambda: Complex64, cfg: &QuadConfig) -> Result<IntegralValue, Error> {
    let form = ChamberForm::vertex(g.arrangement(), &g.vertex(xp).indices);
    integrate_chamber_form(g, c, &form, lambda, cfg)
}

/// Same as [`integrate_chamber`] for an arbitrary logarithmic form.
pub fn integrate_chamber_form(
    g: &Geometry,
    c: usize,
    form: &ChamberForm,
    lambda: Complex64,
    cfg: &QuadConfig,
) -> Result<IntegralValue, Error> {
    let chamber = g.chambers().get(c).ok_or_else(|| Error::Domain(format!("no chamber {c}")))?;
    if !chamber.in_dplus {
        return Err(Error::Domain("chamber is not in D+".into()));
    }
    if !chamber.bounded && !(lambda.re > 0.0) {
        return Err(Error::Domain("unbounded chamber needs Re λ > 0".into()));
    }
    let arr = g.arrangement();
    let data = Integrand::new(arr, &chamber.signs, form, lambda);
    match arr.dim() {
        1 => Ok(line(g, c, &data, cfg)),
        2 => plane(g, c, &data, cfg),
        _ => Ok(qmc(g, c, &data, cfg)),
    }
}

fn line(g: &Geometry, c: usize, data: &Integrand, cfg: &QuadConfig) -> IntegralValue {
    let q = Integrator::new();
    let verts = g.boundary_vertices(c);
    let n = data.beta.len();
    if verts.len() == 2 {
        let (vp, vq) = (g.vertex(verts[0]), g.vertex(verts[1]));
        let (p, qq) = (to_f64(&vp.point[0]), to_f64(&vq.point[0]));
        let (jp, jq) = (vp.indices[0], vq.indices[0]);
        let len = qq - p;
        let ends = data.scale * len.abs() * data.pow(jp, data.lin[jp][0] * len) * data.pow(jq, data.lin[jq][0] * len);
        q.integrate(Axis::Finite { left: data.beta[jp], right: data.beta[jq] }, cfg, |t| {
            let z = [p + t * len];
            let mut v = ends;
            for r in (0..n).filter(|&r| r != jp && r != jq) {
                v *= data.pow(r, data.f(r, &z));
            }
            data.exp(data.f0(&z)) * v
        })
    } else {
        let vp = g.vertex(verts[0]);
        let p = to_f64(&vp.point[0]);
        let jp = vp.indices[0];
        let d = 1.0 / data.f0[0];
        let base = data.exp(vp.f0_f64()) * (data.scale * d.abs() * data.pow(jp, data.lin[jp][0] * d));
        let im = data.lambda.im;
        q.integrate(Axis::SemiInfinite { left: data.beta[jp], rate: data.lambda.re }, cfg, |t| {
            let z = [p + t * d];
            let mut v = 1.0;
            for r in (0..n).filter(|&r| r != jp) {
                v *= data.pow(r, data.f(r, &z));
            }
            base * Complex64::new(0.0, -im * t).exp() * v
        })
    }
}

fn det2(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// An unbounded edge of a plane chamber: the ray `corner + t d` on `H_j`.
struct Ray {
    corner: Vec<Rational>,
    hyperplane: usize,
    direction: Vec<Rational>,
}

fn unbounded_edges(g: &Geometry, c: usize, verts: &[usize]) -> Result<Vec<Ray>, Error> {
    let arr = g.arrangement();
    let signs = &g.chamber(c).signs;
    let mut rays = Vec::new();
    for &x in verts {
        let v = g.vertex(x);
        for (pos, &j) in v.indices.iter().enumerate() {
            let m = v.indices[1 - pos];
            let e = arr.edge_direction(&[j])?.direction;
            if sign(&arr.form(m).linear_eval(&e)) != signs[m] {
                continue;
            }
            let beyond = verts
                .iter()
                .any(|&y| y != x && g.vertex(y).contains(j) && g.vertex(y).f0_value > v.f0_value);
            if !beyond {
                rays.push(Ray { corner: v.point.clone(), hyperplane: j, direction: e });
            }
        }
    }
    Ok(rays)
}

fn plane(g: &Geometry, c: usize, data: &Integrand, cfg: &QuadConfig) -> Result<IntegralValue, Error> {
    let arr = g.arrangement();
    let verts = g.boundary_vertices(c);
    let mut corners: Vec<Vec<Rational>> = verts.iter().map(|&x| g.vertex(x).point.clone()).collect();
    let q = Integrator::new();
    let mut total = IntegralValue::zero();

    if !g.chamber(c).bounded {
        let rays = unbounded_edges(g, c, &verts)?;
        if rays.len() != 2 {
            return Err(Error::Internal(format!("unbounded chamber with {} unbounded edges", rays.len())));
        }
        let top = verts.iter().map(|&x| g.vertex(x).f0_value.clone()).max().expect("a vertex") + Rational::from_integer(1.into());
        let truncation: Vec<Vec<Rational>> = rays
            .iter()
            .map(|r| {
                let t = &top - arr.f0_eval(&r.corner);
                r.corner.iter().zip(&r.direction).map(|(p, d)| p + &t * d).collect()
            })
            .collect();
        total = total.plus(strip(data, &rays, &truncation, to_f64(&top), &q, cfg));
        corners.extend(truncation);
    }

    let n = corners.len();
    let mut centroid = vec![Rational::zero(); 2];
    for p in &corners {
        centroid[0] += &p[0];
        centroid[1] += &p[1];
    }
    let count = Rational::from_integer((n as i64).into());
    centroid.iter_mut().for_each(|v| *v /= &count);
    let cf = point_f64(&centroid);
    let mut order: Vec<(f64, Vec<Rational>)> = corners
        .into_iter()
        .map(|p| {
            let pf = point_f64(&p);
            (libm::atan2(pf[1] - cf[1], pf[0] - cf[0]), p)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let polygon: Vec<Vec<Rational>> = order.into_iter().map(|(_, p)| p).collect();
    let two = Rational::from_integer(2.into());

    for i in 0..n {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % n];
        let mid: Vec<Rational> = a.iter().zip(b).map(|(x, y)| (x + y) / &two).collect();
        for corner in [a, b] {
            total = total.plus(triangle(arr, data, corner, &mid, &centroid, &q, cfg));
        }
    }
    Ok(total)
}

/// The triangle `(P, M, C)` with `M` on a chamber edge through `P` and `C`
/// interior, via `x = P + r((1-w)M + wC - P)`.
fn triangle(
    arr: &Arrangement,
    data: &Integrand,
    p: &[Rational],
    m: &[Rational],
    c: &[Rational],
    q: &Integrator,
    cfg: &QuadConfig,
) -> IntegralValue {
    let n = data.beta.len();
    let (pf, mf, cf) = (point_f64(p), point_f64(m), point_f64(c));
    let jac = det2(&sub(&mf, &pf), &sub(&cf, &mf)).abs();
    // 0: smooth, 1: through P only, 2: along the edge P M.
    let mut class = vec![0u8; n];
    let mut r_exp = 1.0;
    let mut w_exp = 0.0;
    let mut constant = data.scale * jac;
    for (j, cl) in class.iter_mut().enumerate() {
        let f = arr.form(j);
        if f.eval(p).is_zero() {
            r_exp += data.beta[j];
            if f.eval(m).is_zero() {
                *cl = 2;
                w_exp += data.beta[j];
                constant *= data.pow(j, data.f(j, &cf));
            } else {
                *cl = 1;
            }
        }
    }
    let axes = [Axis::Finite { left: r_exp, right: 0.0 }, Axis::Finite { left: w_exp, right: 0.0 }];
    q.integrate_nested(&axes, cfg, &|t: &[f64]| {
        let (r, w) = (t[0], t[1]);
        let y = [(1.0 - w) * mf[0] + w * cf[0], (1.0 - w) * mf[1] + w * cf[1]];
        let x = [pf[0] + r * (y[0] - pf[0]), pf[1] + r * (y[1] - pf[1])];
        let mut v = constant;
        for (j, &cl) in class.iter().enumerate() {
            match cl {
                0 => v *= data.pow(j, data.f(j, &x)),
                1 => v *= data.pow(j, data.f(j, &y)),
                _ => {}
            }
        }
        data.exp(data.f0(&x)) * v
    })
}

/// The part of an unbounded plane chamber above the level `f0 = top`,
/// parametrized as `(1-w)(Q_a + t d_a) + w(Q_b + t d_b)`.
fn strip(data: &Integrand, rays: &[Ray], truncation: &[Vec<Rational>], top: f64, q: &Integrator, cfg: &QuadConfig) -> IntegralValue {
    let n = data.beta.len();
    let qa = point_f64(&truncation[0]);
    let qb = point_f64(&truncation[1]);
    let da = point_f64(&rays[0].direction);
    let db = point_f64(&rays[1].direction);
    let (ja, jb) = (rays[0].hyperplane, rays[1].hyperplane);
    let dq = sub(&qb, &qa);
    let (ja_det, jb_det, ab_det) = (det2(&da, &dq), det2(&db, &dq), det2(&da, &db));
    let base = data.exp(top) * data.scale;
    let im = data.lambda.im;
    let axes = [
        Axis::SemiInfinite { left: 0.0, rate: data.lambda.re },
        Axis::Finite { left: data.beta[ja], right: data.beta[jb] },
    ];
    q.integrate_nested(&axes, cfg, &|s: &[f64]| {
        let (t, w) = (s[0], s[1]);
        let pa = [qa[0] + t * da[0], qa[1] + t * da[1]];
        let pb = [qb[0] + t * db[0], qb[1] + t * db[1]];
        let x = [(1.0 - w) * pa[0] + w * pb[0], (1.0 - w) * pa[1] + w * pb[1]];
        let jac = ((1.0 - w) * ja_det + w * jb_det + t * ab_det).abs();
        let mut v = jac * data.pow(ja, data.f(ja, &pb)) * data.pow(jb, data.f(jb, &pa));
        for r in (0..n).filter(|&r| r != ja && r != jb) {
            v *= data.pow(r, data.f(r, &x));
        }
        base * Complex64::new(0.0, -im * t).exp() * v
    })
}

const SHIFTS: usize = 8;
const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = u64::from(base);
    let mut inv = 1.0 / b as f64;
    let mut r = 0.0;
    while i > 0 {
        r += (i % b) as f64 * inv;
        i /= b;
        inv /= b as f64;
    }
    r
}

/// Randomized Halton quadrature in the cone coordinates of the minimizing
/// vertex, `x = X + Σ a_i e_i`. Each `a_i` is drawn so that the power
/// singularity on its face and the exponential decay are absorbed into the
/// sampling density; the error is the standard error over random shifts.
fn qmc(g: &Geometry, c: usize, data: &Integrand, cfg: &QuadConfig) -> IntegralValue {
    let arr = g.arrangement();
    let k = arr.dim();
    let x = g.chamber(c).min_vertex.expect("chamber of D+");
    let vertex = g.vertex(x);
    let base = point_f64(&vertex.point);
    let dirs: Vec<Vec<f64>> = (0..k).map(|i| point_f64(g.cone_direction(x, i))).collect();
    let jac = {
        let rows: Vec<Vec<Rational>> = (0..k).map(|i| g.cone_direction(x, i).to_vec()).collect();
        to_f64(&abs(&det(&rows)))
    };
    let signs = &g.chamber(c).signs;
    let kappa = data.lambda.re.max(1e-3);
    let power: Vec<f64> = vertex.indices.iter().map(|&j| 1.0 / (data.beta[j].min(0.0) + 1.0)).collect();
    let slopes: Vec<f64> = vertex.indices.iter().zip(&dirs).map(|(&j, e)| data.l(j, e)).collect();
    let per_shift = (cfg.max_nodes / SHIFTS).clamp(256, 1 << 16);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let mut estimates = Vec::with_capacity(SHIFTS);
    let n = data.beta.len();
    let f0x = vertex.f0_f64();
    for _ in 0..SHIFTS {
        let shift: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=per_shift {
            let mut a = vec![0.0; k];
            let mut weight = jac * data.scale;
            let mut ok = true;
            for d in 0..k {
                let u = radical_inverse(i as u64, PRIMES[d % PRIMES.len()]) + shift[d];
                let u = u - libm::floor(u);
                if u <= 0.0 {
                    ok = false;
                    break;
                }
                let v = libm::pow(u, power[d]);
                a[d] = -libm::log1p(-v) / kappa;
                weight *= power[d] * libm::pow(u, power[d] - 1.0) / (kappa * (1.0 - v));
            }
            if !ok || !weight.is_finite() {
                continue;
            }
            let mut p = base.clone();
            for (ad, e) in a.iter().zip(&dirs) {
                for (pc, ec) in p.iter_mut().zip(e) {
                    *pc += ad * ec;
                }
            }
            let mut inside = true;
            let mut v = weight;
            for r in (0..n).filter(|r| !vertex.indices.contains(r)) {
                let fr = data.f(r, &p);
                if fr * f64::from(signs[r]) <= 0.0 {
                    inside = false;
                    break;
                }
                v *= data.pow(r, fr);
            }
            if !inside {
                continue;
            }
            for (d, &j) in vertex.indices.iter().enumerate() {
                v *= data.pow(j, slopes[d] * a[d]);
            }
            acc += data.exp(f0x + a.iter().sum::<f64>()) * v;
        }
        estimates.push(acc / per_shift as f64);
    }
    let mean: Complex64 = estimates.iter().sum::<Complex64>() / SHIFTS as f64;
    let var: f64 = estimates.iter().map(|e| (e - mean).norm_sqr()).sum::<f64>() / (SHIFTS * (SHIFTS - 1)) as f64;
    let error = libm::sqrt(var);
    IntegralValue {
        value: mean,
        error_estimate: error,
        nodes_used: per_shift * SHIFTS,
        converged: error <= cfg.abs_tol.max(cfg.rel_tol * mean.norm()),
    }
}
