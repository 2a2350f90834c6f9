//! Exact linear programming over the rationals.
//!
//! A dense two-phase simplex with Bland's anti-cycling rule. Problem sizes
//! here are tiny (a handful of variables, at most a few dozen constraints),
//! so clarity wins over speed.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x  (relation)  rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self { coeffs, relation, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost · x` over columns flagged in `allowed`. Returns false
    /// when the objective is unbounded below.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.width {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        reduced -= &cost[b] * &self.rows[i][j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Minimizes `objective · x` over free variables `x` subject to `constraints`.
pub fn minimize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    let slack_count = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    // Columns: x+ (n), x- (n), slacks, artificials (m), then rhs.
    let structural = 2 * n;
    let art0 = structural + slack_count;
    let width = art0 + m;

    let mut rows = Vec::with_capacity(m);
    let mut slack = structural;
    for (i, con) in constraints.iter().enumerate() {
        debug_assert_eq!(con.coeffs.len(), n);
        let mut row = vec![Rational::zero(); width + 1];
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a;
        }
        match con.relation {
            Relation::Le => {
                row[slack] = Rational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[width] = con.rhs.clone();
        if row[width].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        row[art0 + i] = Rational::one();
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (art0..art0 + m).collect(), width };

    let mut phase1 = vec![Rational::zero(); width];
    for c in phase1.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    let all = vec![true; width];
    t.optimize(&phase1, &all);
    let infeasibility = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= art0)
        .fold(Rational::zero(), |acc, (i, _)| acc + t.rhs(i));
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art0 {
            match (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut phase2 = vec![Rational::zero(); width];
    for j in 0..n {
        phase2[j] = objective[j].clone();
        phase2[n + j] = -&objective[j];
    }
    let allowed: Vec<bool> = (0..width).map(|j| j < art0).collect();
    if !t.optimize(&phase2, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] += t.rhs(i);
        } else if b < 2 * n {
            x[b - n] -= t.rhs(i);
        }
    }
    let value = objective.iter().zip(&x).fold(Rational::zero(), |acc, (c, v)| acc + c * v);
    LpOutcome::Optimal { x, value }
}

/// Maximizes `objective · x`; the reported value is the maximum.
pub fn maximize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let neg: Vec<Rational> = objective.iter().map(|c| -c).collect();
    match minimize(&neg, constraints) {
        LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(coeffs.iter().map(|&v| q(v)).collect(), rel, q(rhs))
    }

    #[test]
    fn triangle_minimum_is_at_the_origin() {
        let cons = [c(&[1, 0], Relation::Ge, 0), c(&[0, 1], Relation::Ge, 0), c(&[1, 1], Relation::Le, 1)];
        match minimize(&[q(2), q(1)], &cons) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![q(0), q(0)]);
                assert_eq!(value, q(0));
            }
            other => panic!("{other:?}"),
        }
        match maximize(&[q(2), q(1)], &cons) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![q(1), q(0)]);
                assert_eq!(value, q(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_and_infeasible() {
        let quadrant = [c(&[1, 0], Relation::Ge, 0), c(&[0, 1], Relation::Ge, 0)];
        assert_eq!(maximize(&[q(1), q(1)], &quadrant), LpOutcome::Unbounded);
        let empty = [c(&[1], Relation::Ge, 2), c(&[1], Relation::Le, 1)];
        assert_eq!(minimize(&[q(1)], &empty), LpOutcome::Infeasible);
    }

    #[test]
    fn free_variables_can_go_negative() {
        let cons = [c(&[1], Relation::Ge, -5)];
        match minimize(&[q(1)], &cons) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_constraints_and_redundancy() {
        let cons = [
            c(&[1, 1], Relation::Eq, 2),
            c(&[2, 2], Relation::Eq, 4),
            c(&[1, 0], Relation::Ge, 0),
            c(&[0, 1], Relation::Ge, 0),
        ];
        match minimize(&[q(1), q(3)], &cons) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![q(2), q(0)]);
                assert_eq!(value, q(2));
            }
            other => panic!("{other:?}"),
        }
    }
}
