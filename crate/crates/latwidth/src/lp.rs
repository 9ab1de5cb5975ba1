//! Exact rational linear programming by the simplex method.
//!
//! Dense two-phase simplex with Bland's anti-cycling rule, entirely over
//! `Rat`. Termination is guaranteed and every answer is exact, which is the
//! whole point: the geometry modules use this for convex-combination
//! membership, polyhedron feasibility, and constraint irredundancy, all of
//! which must be decided without tolerances.

use num_traits::{One, Signed, Zero};

use crate::linalg::{Rat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    /// Optimal solution and objective value.
    Optimal(RatVec, Rat),
}

/// Tableau in canonical form: rows `[A | b]` with `b >= 0` maintained,
/// `basis[i]` indexing the identity column of row `i`, and a reduced-cost
/// row for the current objective.
struct Tableau {
    rows: Vec<Vec<Rat>>, // m rows, each n+1 wide (last entry = rhs)
    cost: Vec<Rat>,      // n reduced costs + negated objective value
    basis: Vec<usize>,
    ncols: usize,
    enterable: Vec<bool>,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let inv = Rat::one() / self.rows[r][j].clone();
        for e in self.rows[r].iter_mut() {
            *e *= inv.clone();
        }
        let pivot_row = self.rows[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for (e, p) in self.rows[i].iter_mut().zip(pivot_row.iter()) {
                *e = &*e - &f * p;
            }
        }
        if !self.cost[j].is_zero() {
            let f = self.cost[j].clone();
            for (e, p) in self.cost.iter_mut().zip(pivot_row.iter()) {
                *e = &*e - &f * p;
            }
        }
        self.basis[r] = j;
    }

    /// Rewrite the reduced-cost row for a fresh objective (minimize c.z).
    fn set_objective(&mut self, c: &[Rat]) {
        let mut cost: Vec<Rat> = c.to_vec();
        cost.push(Rat::zero());
        for (i, &bi) in self.basis.iter().enumerate() {
            if cost[bi].is_zero() {
                continue;
            }
            let f = cost[bi].clone();
            for (e, p) in cost.iter_mut().zip(self.rows[i].iter()) {
                *e = &*e - &f * p;
            }
        }
        self.cost = cost;
    }

    /// Minimize with Bland's rule: enter the lowest-index improvable
    /// column, leave on the lowest-index basic variable among the tied
    /// minimum ratios.
    fn run(&mut self) -> Phase {
        loop {
            let entering =
                (0..self.ncols).find(|&j| self.enterable[j] && self.cost[j].is_negative());
            let Some(j) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.ncols] / &self.rows[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Phase::Unbounded;
            };
            self.pivot(r, j);
        }
    }

    fn objective_value(&self) -> Rat {
        -self.cost[self.ncols].clone()
    }

    fn solution(&self, nvars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < nvars {
                x[bi] = self.rows[i][self.ncols].clone();
            }
        }
        x
    }
}

/// Find `z >= 0` with `A z = b`, returning the phase-1 tableau on success
/// so callers can continue with their own objective.
fn phase_one(a: &[Vec<Rat>], b: &[Rat]) -> Option<Tableau> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let ncols = n + m; // artificials appended
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rat> = a[i]
            .iter()
            .map(|e| if flip { -e.clone() } else { e.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        cost: vec![],
        basis: (n..n + m).collect(),
        ncols,
        enterable: vec![true; ncols],
    };
    let mut c = vec![Rat::zero(); ncols];
    for j in n..ncols {
        c[j] = Rat::one();
    }
    t.set_objective(&c);
    match t.run() {
        Phase::Unbounded => unreachable!("phase-1 objective is bounded below by 0"),
        Phase::Optimal => {}
    }
    if !t.objective_value().is_zero() {
        return None;
    }
    // Pivot leftover artificials out of the basis; a row where that is
    // impossible is a redundant equation and is dropped.
    let mut drop_rows = Vec::new();
    for i in 0..t.basis.len() {
        if t.basis[i] < n {
            continue;
        }
        match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
            Some(j) => t.pivot(i, j),
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }
    for j in n..ncols {
        t.enterable[j] = false;
    }
    Some(t)
}

/// Minimize `c . z` over `{z >= 0 : A z = b}` (standard form).
pub fn minimize_standard(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpResult {
    let n = if a.is_empty() { c.len() } else { a[0].len() };
    assert_eq!(c.len(), n);
    let Some(mut t) = phase_one(a, b) else {
        return LpResult::Infeasible;
    };
    let mut cx = c.to_vec();
    cx.extend(vec![Rat::zero(); t.ncols - n]);
    t.set_objective(&cx);
    match t.run() {
        Phase::Unbounded => LpResult::Unbounded,
        Phase::Optimal => {
            let x = t.solution(n);
            let value = x.iter().zip(c.iter()).map(|(xi, ci)| xi * ci).sum::<Rat>();
            LpResult::Optimal(
                RatVec::new(if x.is_empty() { vec![Rat::zero()] } else { x }),
                value,
            )
        }
    }
}

/// Maximize `objective . x` over `{x : a_i . x >= b_i}` with `x` free.
///
/// Internally substitutes `x = u - w`, adds surplus variables, and runs the
/// standard-form solver. The returned point is a basic optimal solution.
pub fn maximize(objective: &RatVec, constraints: &[(RatVec, Rat)]) -> LpResult {
    let d = objective.len();
    let m = constraints.len();
    if m == 0 {
        return if objective.is_zero() {
            LpResult::Optimal(RatVec::zeros(d), Rat::zero())
        } else {
            LpResult::Unbounded
        };
    }
    // columns: u_0..u_{d-1}, w_0..w_{d-1}, s_0..s_{m-1}
    let n = 2 * d + m;
    let mut a = Vec::with_capacity(m);
    for (i, (normal, _)) in constraints.iter().enumerate() {
        assert_eq!(normal.len(), d);
        let mut row = Vec::with_capacity(n);
        row.extend(normal.iter().cloned());
        row.extend(normal.iter().map(|e| -e.clone()));
        row.extend((0..m).map(|k| if k == i { -Rat::one() } else { Rat::zero() }));
        a.push(row);
    }
    let b: Vec<Rat> = constraints.iter().map(|(_, rhs)| rhs.clone()).collect();
    let mut c = vec![Rat::zero(); n];
    for j in 0..d {
        c[j] = -objective[j].clone();
        c[d + j] = objective[j].clone();
    }
    match minimize_standard(&a, &b, &c) {
        LpResult::Infeasible => LpResult::Infeasible,
        LpResult::Unbounded => LpResult::Unbounded,
        LpResult::Optimal(z, _) => {
            let x = RatVec::new((0..d).map(|j| &z[j] - &z[d + j]).collect());
            let value = objective.dot(&x);
            LpResult::Optimal(x, value)
        }
    }
}

/// One feasible point of `{x : a_i . x >= b_i}`, or `None`.
pub fn feasible_point(constraints: &[(RatVec, Rat)]) -> Option<RatVec> {
    match maximize(
        &RatVec::zeros(constraints.first().map_or(1, |(n, _)| n.len())),
        constraints,
    ) {
        LpResult::Optimal(x, _) => Some(x),
        LpResult::Infeasible => None,
        LpResult::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Exact test: is `p` a convex combination of `points`?
pub fn convex_combination_feasible(p: &RatVec, points: &[RatVec]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = p.len();
    let k = points.len();
    // rows: d coordinate equations plus the barycentric equation
    let mut a = Vec::with_capacity(d + 1);
    for i in 0..d {
        a.push(points.iter().map(|q| q[i].clone()).collect::<Vec<Rat>>());
    }
    a.push(vec![Rat::one(); k]);
    let mut b: Vec<Rat> = p.entries().to_vec();
    b.push(Rat::one());
    phase_one(&a, &b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};

    fn rv(v: &[i64]) -> RatVec {
        RatVec::from_i64(v)
    }

    fn ge(n: &[i64], b: i64) -> (RatVec, Rat) {
        (rv(n), rat_int(b))
    }

    #[test]
    fn maximize_over_square() {
        // max x + y over [-1,1]^2  ->  2 at (1,1)
        let cons = vec![
            ge(&[1, 0], -1),
            ge(&[-1, 0], -1),
            ge(&[0, 1], -1),
            ge(&[0, -1], -1),
        ];
        match maximize(&rv(&[1, 1]), &cons) {
            LpResult::Optimal(x, v) => {
                assert_eq!(v, rat_int(2));
                assert_eq!(x, rv(&[1, 1]));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        let cons = vec![ge(&[1], 1), ge(&[-1], 0)]; // x >= 1 and x <= 0
        assert_eq!(maximize(&rv(&[1]), &cons), LpResult::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let cons = vec![ge(&[1], 0)]; // x >= 0
        assert_eq!(maximize(&rv(&[1]), &cons), LpResult::Unbounded);
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // max y s.t. 3y <= 1, y >= 0  ->  1/3
        let cons = vec![ge(&[0, -3], -1), ge(&[0, 1], 0)];
        match maximize(&rv(&[0, 1]), &cons) {
            LpResult::Optimal(_, v) => assert_eq!(v, rat(1, 3)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn convex_combination_membership() {
        let square = vec![rv(&[-1, -1]), rv(&[-1, 1]), rv(&[1, -1]), rv(&[1, 1])];
        assert!(convex_combination_feasible(&rv(&[0, 0]), &square));
        assert!(convex_combination_feasible(&rv(&[1, 1]), &square));
        assert!(convex_combination_feasible(
            &RatVec::from_frac(&[(1, 2), (-1, 3)]),
            &square
        ));
        assert!(!convex_combination_feasible(&rv(&[2, 0]), &square));
        assert!(!convex_combination_feasible(
            &RatVec::from_frac(&[(1, 1), (3, 2)]),
            &square
        ));
    }

    #[test]
    fn degenerate_vertices_terminate() {
        // the feasible set is the single point (0,0) cut out redundantly
        let cons = vec![
            ge(&[1, 0], 0),
            ge(&[-1, 0], 0),
            ge(&[0, 1], 0),
            ge(&[0, -1], 0),
            ge(&[1, 1], 0),
            ge(&[-1, -1], 0),
        ];
        match maximize(&rv(&[1, 1]), &cons) {
            LpResult::Optimal(x, v) => {
                assert!(v.is_zero());
                assert!(x.is_zero());
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
