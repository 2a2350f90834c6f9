//! Vertices, edges, chambers and cones of a generic arrangement, all in exact
//! arithmetic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::arrangement::{Arrangement, Violation};
use crate::linalg::{combinations, det, sign, to_f64};
use crate::lp::{maximize, minimize, Constraint, LpOutcome, Relation};
use crate::{Error, Rational};

/// The intersection point of `k` hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    /// Sorted hyperplane indices.
    pub indices: Vec<usize>,
    pub point: Vec<Rational>,
    pub f0_value: Rational,
    /// Sign of `det(l_{j_1}, ..., l_{j_k})` with indices increasing.
    pub orientation_sign: i8,
}

impl Vertex {
    pub fn f0_f64(&self) -> f64 {
        to_f64(&self.f0_value)
    }

    pub fn point_f64(&self) -> Vec<f64> {
        self.point.iter().map(to_f64).collect()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }
}

/// A one-dimensional edge `L_U` with direction normalized to `f0(e_U) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub indices: Vec<usize>,
    pub direction: Vec<Rational>,
}

/// A connected component of the hyperplane complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Sign of each `f_j` on the chamber, `+1` or `-1`.
    pub signs: Vec<i8>,
    pub interior_point: Vec<Rational>,
    pub bounded: bool,
    /// Whether `f0` is bounded below on the chamber.
    pub in_dplus: bool,
    /// Position (in f0-sorted order) of the vertex minimizing `f0` on the closure.
    pub min_vertex: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeStatus {
    Interior,
    Boundary,
    Outside,
}

/// Coordinates of a point in the cone frame `X ± sum a_i e_{X \ {X_i}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeMembership {
    pub status: ConeStatus,
    pub coefficients: Vec<Rational>,
}

/// Where a floating-point sample lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Chamber(usize),
    OnHyperplane(usize),
}

impl Arrangement {
    /// The direction of the edge cut out by the `k - 1` hyperplanes in `set`,
    /// scaled so that `f0` increases by one along it.
    pub fn edge_direction(&self, set: &[usize]) -> Result<Edge, Error> {
        if set.len() + 1 != self.dim() {
            return Err(Error::Domain(format!(
                "an edge needs {} hyperplanes, got {}",
                self.dim() - 1,
                set.len()
            )));
        }
        let mut indices = set.to_vec();
        indices.sort_unstable();
        let v = self.edge_kernel(&indices);
        let scale = self.f0_eval(&v);
        if scale.is_zero() {
            return Err(Error::NotGeneric(vec![Violation::F0ConstantOnEdge(indices)]));
        }
        let direction = v.iter().map(|c| c / &scale).collect();
        Ok(Edge { indices, direction })
    }
}

/// All vertices, sorted by increasing `f0`.
pub fn enumerate_vertices(arr: &Arrangement) -> Result<Vec<Vertex>, Error> {
    let mut out = Vec::new();
    for indices in combinations(arr.len(), arr.dim()) {
        let point = arr
            .intersection_point(&indices)
            .ok_or_else(|| Error::NotGeneric(vec![Violation::DependentNormals(indices.clone())]))?;
        let orientation_sign = sign(&det(&arr.linear_rows(&indices)));
        let f0_value = arr.f0_eval(&point);
        out.push(Vertex { indices, point, f0_value, orientation_sign });
    }
    out.sort_by(|a, b| a.f0_value.cmp(&b.f0_value));
    Ok(out)
}

/// Sign of `f_j` at each vertex (zero for the hyperplanes through it).
fn vertex_sign_table(arr: &Arrangement, vertices: &[Vertex]) -> Vec<Vec<i8>> {
    vertices
        .iter()
        .map(|v| arr.forms().iter().map(|f| sign(&f.eval(&v.point))).collect())
        .collect()
}

/// Edge directions `e_{X \ {X_i}}` for every vertex, in index order of `X`.
fn cone_directions(arr: &Arrangement, vertices: &[Vertex]) -> Result<Vec<Vec<Vec<Rational>>>, Error> {
    vertices
        .iter()
        .map(|v| {
            (0..v.indices.len())
                .map(|i| {
                    let mut u = v.indices.clone();
                    u.remove(i);
                    arr.edge_direction(&u).map(|e| e.direction)
                })
                .collect()
        })
        .collect()
}

fn closure_constraints(arr: &Arrangement, signs: &[i8]) -> Vec<Constraint> {
    arr.forms()
        .iter()
        .zip(signs)
        .map(|(f, &s)| {
            let s = Rational::from_integer(s.into());
            Constraint::new(
                f.linear.iter().map(|c| c * &s).collect(),
                Relation::Ge,
                -(&f.constant * &s),
            )
        })
        .collect()
}

/// A point `X + eps d` that stays on the same side of every hyperplane not
/// through `X`.
fn nudge(arr: &Arrangement, vertex: &Vertex, d: &[Rational]) -> Vec<Rational> {
    let two = Rational::from_integer(2.into());
    let mut eps = Rational::one();
    for (j, f) in arr.forms().iter().enumerate() {
        if vertex.contains(j) {
            continue;
        }
        let bound = f.eval(&vertex.point).abs() / (Rational::one() + f.linear_eval(d).abs()) / &two;
        if bound < eps {
            eps = bound;
        }
    }
    vertex.point.iter().zip(d).map(|(p, di)| p + &eps * di).collect()
}

/// Every chamber, discovered through the `2^k` local orthants at each vertex.
/// In a generic arrangement with `N >= k` every chamber is a pointed polyhedron
/// and so has a vertex on its closure. `in_dplus` and `min_vertex` are left
/// for [`classify_dplus`].
pub fn enumerate_chambers(arr: &Arrangement, vertices: &[Vertex]) -> Result<Vec<Chamber>, Error> {
    let dirs = cone_directions(arr, vertices)?;
    let k = arr.dim();
    let mut seen: BTreeMap<Vec<i8>, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for (v, vdirs) in vertices.iter().zip(&dirs) {
        let sigma: Vec<i8> = v
            .indices
            .iter()
            .zip(vdirs)
            .map(|(&j, e)| sign(&arr.form(j).linear_eval(e)))
            .collect();
        for pattern in 0..(1usize << k) {
            let mut d = vec![Rational::zero(); k];
            for i in 0..k {
                let s = if pattern >> i & 1 == 0 { 1 } else { -1 } * sigma[i];
                let s = Rational::from_integer(s.into());
                for (dc, ec) in d.iter_mut().zip(&vdirs[i]) {
                    *dc += &s * ec;
                }
            }
            let p = nudge(arr, v, &d);
            let signs: Vec<i8> = arr.forms().iter().map(|f| sign(&f.eval(&p))).collect();
            if signs.contains(&0) {
                return Err(Error::Internal("orthant sample landed on a hyperplane".into()));
            }
            if seen.contains_key(&signs) {
                continue;
            }
            seen.insert(signs.clone(), out.len());
            let constraints = closure_constraints(arr, &signs);
            let below = minimize(arr.f0(), &constraints);
            let above = maximize(arr.f0(), &constraints);
            let bounded = matches!(below, LpOutcome::Optimal { .. }) && matches!(above, LpOutcome::Optimal { .. });
            out.push(Chamber { signs, interior_point: p, bounded, in_dplus: false, min_vertex: None });
        }
    }
    Ok(out)
}

/// Fills `in_dplus` and `min_vertex` by minimizing `f0` over each closure.
pub fn classify_dplus(arr: &Arrangement, vertices: &[Vertex], chambers: &mut [Chamber]) -> Result<(), Error> {
    for ch in chambers.iter_mut() {
        match minimize(arr.f0(), &closure_constraints(arr, &ch.signs)) {
            LpOutcome::Optimal { x, .. } => {
                let pos = vertices
                    .iter()
                    .position(|v| v.point == x)
                    .ok_or_else(|| Error::Internal("f0 minimizer is not a vertex".into()))?;
                ch.in_dplus = true;
                ch.min_vertex = Some(pos);
            }
            LpOutcome::Unbounded => {
                ch.in_dplus = false;
                ch.min_vertex = None;
            }
            LpOutcome::Infeasible => return Err(Error::Internal("empty chamber closure".into())),
        }
    }
    Ok(())
}

/// Independent chamber count: every sign vector in `{+,-}^N` tested for
/// strict feasibility by one exact LP.
pub fn count_chambers_bruteforce(arr: &Arrangement) -> usize {
    let n = arr.len();
    let k = arr.dim();
    let mut count = 0;
    for mask in 0..(1u64 << n) {
        let mut cons: Vec<Constraint> = Vec::with_capacity(n + 1);
        for (j, f) in arr.forms().iter().enumerate() {
            let s = if mask >> j & 1 == 0 { Rational::one() } else { -Rational::one() };
            let mut coeffs: Vec<Rational> = f.linear.iter().map(|c| c * &s).collect();
            coeffs.push(-Rational::one());
            cons.push(Constraint::new(coeffs, Relation::Ge, -(&f.constant * &s)));
        }
        let mut cap = vec![Rational::zero(); k];
        cap.push(Rational::one());
        cons.push(Constraint::new(cap, Relation::Le, Rational::one()));
        let mut objective = vec![Rational::zero(); k];
        objective.push(Rational::one());
        if let LpOutcome::Optimal { value, .. } = maximize(&objective, &cons) {
            if value.is_positive() {
                count += 1;
            }
        }
    }
    count
}

/// Hyperplanes whose sign differs between two chambers.
pub fn separating_set(a: &Chamber, b: &Chamber) -> Vec<usize> {
    a.signs
        .iter()
        .zip(&b.signs)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(j, _)| j)
        .collect()
}

/// Fully analysed arrangement: sorted vertices, chambers, cones and the
/// bijection between `D+` and the vertices.
#[derive(Debug, Clone)]
pub struct Geometry {
    arrangement: Arrangement,
    vertices: Vec<Vertex>,
    vertex_signs: Vec<Vec<i8>>,
    cone_dirs: Vec<Vec<Vec<Rational>>>,
    cone_signs: Vec<Vec<i8>>,
    chambers: Vec<Chamber>,
    delta_of_vertex: Vec<usize>,
    chamber_lookup: BTreeMap<Vec<i8>, usize>,
    vertex_lookup: BTreeMap<Vec<usize>, usize>,
}

impl Geometry {
    pub fn build(arr: &Arrangement) -> Result<Self, Error> {
        let violations = arr.validate_genericity();
        if !violations.is_empty() {
            return Err(Error::NotGeneric(violations));
        }
        let vertices = enumerate_vertices(arr)?;
        let vertex_signs = vertex_sign_table(arr, &vertices);
        let cone_dirs = cone_directions(arr, &vertices)?;
        let cone_signs: Vec<Vec<i8>> = vertices
            .iter()
            .zip(&cone_dirs)
            .map(|(v, dirs)| {
                v.indices
                    .iter()
                    .zip(dirs)
                    .map(|(&j, e)| sign(&arr.form(j).linear_eval(e)))
                    .collect()
            })
            .collect();
        let mut chambers = enumerate_chambers(arr, &vertices)?;
        classify_dplus(arr, &vertices, &mut chambers)?;
        let chamber_lookup: BTreeMap<Vec<i8>, usize> =
            chambers.iter().enumerate().map(|(i, c)| (c.signs.clone(), i)).collect();
        let vertex_lookup = vertices.iter().enumerate().map(|(i, v)| (v.indices.clone(), i)).collect();

        let k = arr.dim();
        let mut delta_of_vertex = Vec::with_capacity(vertices.len());
        for (x, v) in vertices.iter().enumerate() {
            let mut d = vec![Rational::zero(); k];
            for e in &cone_dirs[x] {
                for (dc, ec) in d.iter_mut().zip(e) {
                    *dc += ec;
                }
            }
            let p = nudge(arr, v, &d);
            let signs: Vec<i8> = arr.forms().iter().map(|f| sign(&f.eval(&p))).collect();
            let idx = *chamber_lookup
                .get(&signs)
                .ok_or_else(|| Error::Internal("cone sample outside every chamber".into()))?;
            if chambers[idx].min_vertex != Some(x) {
                return Err(Error::Internal(format!(
                    "chamber adjacent to vertex {x} along its cone is not minimized there"
                )));
            }
            delta_of_vertex.push(idx);
        }

        Ok(Self {
            arrangement: arr.clone(),
            vertices,
            vertex_signs,
            cone_dirs,
            cone_signs,
            chambers,
            delta_of_vertex,
            chamber_lookup,
            vertex_lookup,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, x: usize) -> &Vertex {
        &self.vertices[x]
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chamber(&self, c: usize) -> &Chamber {
        &self.chambers[c]
    }

    /// Position of the vertex with the given sorted index set.
    pub fn vertex_index(&self, indices: &[usize]) -> Option<usize> {
        self.vertex_lookup.get(indices).copied()
    }

    pub fn chamber_index(&self, signs: &[i8]) -> Option<usize> {
        self.chamber_lookup.get(signs).copied()
    }

    /// `Delta_X`, the chamber of `D+` whose lowest vertex is `X`.
    pub fn delta(&self, x: usize) -> usize {
        self.delta_of_vertex[x]
    }

    /// Chambers of `D+`, ordered by their minimizing vertex.
    pub fn dplus(&self) -> &[usize] {
        &self.delta_of_vertex
    }

    /// Sign of `f_j` at vertex `x` (zero when `j` passes through it).
    pub fn vertex_sign(&self, x: usize, j: usize) -> i8 {
        self.vertex_signs[x][j]
    }

    pub fn vertex_signs(&self, x: usize) -> &[i8] {
        &self.vertex_signs[x]
    }

    /// `e_{X \ {X_i}}` for the `i`-th index of vertex `x`.
    pub fn cone_direction(&self, x: usize, i: usize) -> &[Rational] {
        &self.cone_dirs[x][i]
    }

    /// Sign of `f_{X_i}` on the open cone `C+_X`.
    pub fn cone_sign(&self, x: usize, i: usize) -> i8 {
        self.cone_signs[x][i]
    }

    pub fn cone_signs(&self, x: usize) -> &[i8] {
        &self.cone_signs[x]
    }

    /// Whether vertex `x` lies on the closure of chamber `c`.
    pub fn on_boundary(&self, x: usize, c: usize) -> bool {
        let signs = &self.chambers[c].signs;
        self.vertex_signs[x].iter().zip(signs).all(|(&v, &s)| v == 0 || v == s)
    }

    /// Whether chamber `c` lies inside the open cone `C+_X`.
    pub fn chamber_in_cone(&self, x: usize, c: usize) -> bool {
        let signs = &self.chambers[c].signs;
        self.vertices[x]
            .indices
            .iter()
            .zip(&self.cone_signs[x])
            .all(|(&j, &s)| signs[j] == s)
    }

    /// Chambers inside `C+_X`.
    pub fn chambers_in_cone(&self, x: usize) -> Vec<usize> {
        (0..self.chambers.len()).filter(|&c| self.chamber_in_cone(x, c)).collect()
    }

    /// Vertices on the closure of chamber `c`.
    pub fn boundary_vertices(&self, c: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&x| self.on_boundary(x, c)).collect()
    }

    /// Solves `p = X + sign * sum a_i e_{X \ {X_i}}` and classifies the `a_i`.
    pub fn cone_membership_point(&self, x: usize, p: &[Rational], sign_: i8) -> ConeMembership {
        let v = &self.vertices[x];
        let s = Rational::from_integer(sign_.into());
        let coefficients: Vec<Rational> = v
            .indices
            .iter()
            .zip(&self.cone_dirs[x])
            .map(|(&j, e)| {
                let f = self.arrangement.form(j);
                &s * f.eval(p) / f.linear_eval(e)
            })
            .collect();
        let status = if coefficients.iter().all(Signed::is_positive) {
            ConeStatus::Interior
        } else if coefficients.iter().all(|a| !a.is_negative()) {
            ConeStatus::Boundary
        } else {
            ConeStatus::Outside
        };
        ConeMembership { status, coefficients }
    }

    pub fn cone_membership(&self, x: usize, other: usize, sign_: i8) -> ConeMembership {
        self.cone_membership_point(x, &self.vertices[other].point, sign_)
    }

    pub fn chamber_of_exact_point(&self, p: &[Rational]) -> PointLocation {
        let mut signs = Vec::with_capacity(self.arrangement.len());
        for (j, f) in self.arrangement.forms().iter().enumerate() {
            match sign(&f.eval(p)) {
                0 => return PointLocation::OnHyperplane(j),
                s => signs.push(s),
            }
        }
        PointLocation::Chamber(self.chamber_lookup[&signs])
    }

    /// Floating-point lookup; points within `tol` of a hyperplane are flagged.
    pub fn chamber_of_point(&self, p: &[f64], tol: f64) -> PointLocation {
        match self.sign_vector_f64(p, tol) {
            Ok(signs) => PointLocation::Chamber(self.chamber_lookup[&signs]),
            Err(j) => PointLocation::OnHyperplane(j),
        }
    }

    /// Signs of all `f_j(p)`, or the first hyperplane within `tol` of `p`.
    pub fn sign_vector_f64(&self, p: &[f64], tol: f64) -> Result<Vec<i8>, usize> {
        let mut signs = Vec::with_capacity(self.arrangement.len());
        for (j, f) in self.arrangement.forms().iter().enumerate() {
            let v = f.eval_f64(p);
            if v.abs() <= tol {
                return Err(j);
            }
            signs.push(if v > 0.0 { 1 } else { -1 });
        }
        Ok(signs)
    }
}

/// The arrangement analysed for both `f0` and `-f0`.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub plus: Geometry,
    /// Geometry of the reflected problem. Its vertex order is reversed.
    pub minus: Geometry,
    minus_of_plus: Vec<usize>,
}

impl Analysis {
    pub fn new(arr: &Arrangement) -> Result<Self, Error> {
        let plus = Geometry::build(arr)?;
        let minus = Geometry::build(&arr.reflected())?;
        let minus_of_plus = plus
            .vertices()
            .iter()
            .map(|v| minus.vertex_index(&v.indices).expect("same vertex sets"))
            .collect();
        Ok(Self { plus, minus, minus_of_plus })
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.plus.arrangement()
    }

    /// Position in the reflected geometry of vertex `x` of the original one.
    pub fn minus_index(&self, x: usize) -> usize {
        self.minus_of_plus[x]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::AffineForm;
    use crate::linalg::binomial;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qq(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn example2(a: i64, b: i64) -> Arrangement {
        Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[1, 1], -1),
            ],
            vec![0.3, 0.4, 0.5],
            vec![q(a), q(b)],
        )
        .unwrap()
    }

    fn line(points: &[i64]) -> Arrangement {
        let forms = points.iter().map(|&p| AffineForm::from_ints(&[1], -p)).collect();
        Arrangement::new(forms, vec![0.5; points.len()], vec![q(1)]).unwrap()
    }

    #[test]
    fn example_two_vertices_in_f0_order() {
        let g = Geometry::build(&example2(2, 1)).unwrap();
        let pts: Vec<Vec<Rational>> = g.vertices().iter().map(|v| v.point.clone()).collect();
        assert_eq!(pts, vec![vec![q(0), q(0)], vec![q(0), q(1)], vec![q(1), q(0)]]);
        let idx: Vec<Vec<usize>> = g.vertices().iter().map(|v| v.indices.clone()).collect();
        assert_eq!(idx, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(g.chambers().len(), 7);
        assert_eq!(g.chambers().iter().filter(|c| c.in_dplus).count(), 3);
        assert_eq!(g.chambers().iter().filter(|c| c.bounded).count(), 1);
        // Delta_{X1} is the open triangle.
        assert_eq!(g.chamber(g.delta(0)).signs, vec![1, 1, -1]);
        assert!(g.chamber(g.delta(0)).bounded);
    }

    #[test]
    fn example_two_edge_directions() {
        let arr = example2(3, 2);
        assert_eq!(arr.edge_direction(&[1]).unwrap().direction, vec![qq(1, 3), q(0)]);
        assert_eq!(arr.edge_direction(&[0]).unwrap().direction, vec![q(0), qq(1, 2)]);
        assert_eq!(arr.edge_direction(&[2]).unwrap().direction, vec![q(1), q(-1)]);
        let line = line(&[0]);
        assert_eq!(line.edge_direction(&[]).unwrap().direction, vec![q(1)]);
    }

    #[test]
    fn line_chambers_and_dplus() {
        let g = Geometry::build(&line(&[0, 1])).unwrap();
        assert_eq!(g.chambers().len(), 3);
        let interval = g.chamber(g.delta(0));
        assert_eq!(interval.signs, vec![1, -1]);
        let ray = g.chamber(g.delta(1));
        assert_eq!(ray.signs, vec![1, 1]);
        assert_eq!(separating_set(interval, ray), vec![1]);
        assert_eq!(separating_set(ray, ray), Vec::<usize>::new());
        assert_eq!(g.cone_membership(0, 1, 1).status, ConeStatus::Interior);
        assert_eq!(g.cone_membership(1, 0, 1).status, ConeStatus::Outside);
        let own = g.cone_membership(0, 0, 1);
        assert_eq!(own.status, ConeStatus::Boundary);
        assert!(own.coefficients.iter().all(Zero::is_zero));
    }

    #[test]
    fn chamber_of_point_flags_hyperplanes() {
        let g = Geometry::build(&example2(2, 1)).unwrap();
        assert_eq!(g.chamber_of_point(&[0.1, 0.1], 1e-9), PointLocation::Chamber(g.delta(0)));
        assert_eq!(g.chamber_of_point(&[0.0, 0.5], 1e-9), PointLocation::OnHyperplane(0));
        let l = Geometry::build(&line(&[0, 1])).unwrap();
        assert_eq!(l.chamber_of_point(&[0.5], 1e-9), PointLocation::Chamber(l.delta(0)));
    }

    #[test]
    fn example_two_cone_of_third_vertex() {
        let g = Geometry::build(&example2(2, 1)).unwrap();
        // X3 = (1,0) sits on the boundary ray of C+_{X1} along y = 0.
        let m = g.cone_membership(0, 2, 1);
        assert_eq!(m.status, ConeStatus::Boundary);
        assert_eq!(m.coefficients, vec![q(2), q(0)]);
    }

    #[test]
    fn four_lines_give_eleven_chambers() {
        let arr = Arrangement::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[1, 1], -1),
                AffineForm::from_ints(&[1, -2], -3),
            ],
            vec![0.5; 4],
            vec![q(5), q(2)],
        )
        .unwrap();
        let g = Geometry::build(&arr).unwrap();
        assert_eq!(g.vertices().len(), binomial(4, 2));
        assert_eq!(g.chambers().len(), 11);
        assert_eq!(count_chambers_bruteforce(&arr), 11);
        assert_eq!(count_chambers_bruteforce(&example2(2, 1)), 7);
    }

    #[test]
    fn reflected_analysis_reverses_vertex_order() {
        let a = Analysis::new(&example2(2, 1)).unwrap();
        assert_eq!(a.minus_index(0), 2);
        assert_eq!(a.minus_index(2), 0);
    }
}
