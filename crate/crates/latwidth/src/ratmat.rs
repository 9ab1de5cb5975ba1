//! Dense exact rational matrix routines: elimination, solving, nullspaces,
//! inverses. Internal plumbing for the geometry modules; all arithmetic is
//! over `Rat`, no pivoting heuristics beyond "first nonzero" (exactness
//! makes numerical pivoting irrelevant).

use num_traits::{One, Zero};

use crate::linalg::{Rat, RatVec};

/// Row-reduce in place to reduced row echelon form.
/// Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return vec![];
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for pc in 0..n {
        if pr == m {
            break;
        }
        let Some(pivot_row) = (pr..m).find(|&r| !rows[r][pc].is_zero()) else {
            continue;
        };
        rows.swap(pr, pivot_row);
        let inv = Rat::one() / rows[pr][pc].clone();
        for j in pc..n {
            let v = &rows[pr][j] * &inv;
            rows[pr][j] = v;
        }
        for r in 0..m {
            if r == pr || rows[r][pc].is_zero() {
                continue;
            }
            let factor = rows[r][pc].clone();
            for j in pc..n {
                let v = &rows[r][j] - &factor * &rows[pr][j];
                rows[r][j] = v;
            }
        }
        pivots.push(pc);
        pr += 1;
    }
    pivots
}

pub fn rank(rows: &[RatVec]) -> usize {
    let mut work: Vec<Vec<Rat>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    rref(&mut work).len()
}

/// Solve `A x = b` for one solution (free variables set to zero).
/// `a` is given by rows. Returns `None` if the system is inconsistent.
pub fn solve(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return None;
    }
    let n = a[0].len();
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut row = r.entries().to_vec();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut work);
    // inconsistent iff a pivot lands in the augmented column
    if pivots.iter().any(|&p| p == n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = work[r][n].clone();
    }
    Some(RatVec::new(x))
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &[RatVec], n: usize) -> Vec<RatVec> {
    if a.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                RatVec::new(v)
            })
            .collect();
    }
    assert_eq!(a[0].len(), n);
    let mut work: Vec<Vec<Rat>> = a.iter().map(|r| r.entries().to_vec()).collect();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][f].clone();
            }
            RatVec::new(v)
        })
        .collect()
}

/// Inverse of a square matrix given by rows; `None` if singular.
pub fn inverse(a: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = a.len();
    assert!(
        n > 0 && a.iter().all(|r| r.len() == n),
        "inverse needs square input"
    );
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.entries().to_vec();
            for j in 0..n {
                row.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            row
        })
        .collect();
    let pivots = rref(&mut work);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(
        work.into_iter()
            .map(|row| RatVec::new(row[n..].to_vec()))
            .collect(),
    )
}

/// Determinant of a square rational matrix.
pub fn det(a: &[RatVec]) -> Rat {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n));
    let mut work: Vec<Vec<Rat>> = a.iter().map(|r| r.entries().to_vec()).collect();
    let mut d = Rat::one();
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| !work[r][k].is_zero()) else {
            return Rat::zero();
        };
        if pivot_row != k {
            work.swap(k, pivot_row);
            d = -d;
        }
        d *= work[k][k].clone();
        let inv = Rat::one() / work[k][k].clone();
        for r in k + 1..n {
            if work[r][k].is_zero() {
                continue;
            }
            let factor = &work[r][k] * &inv;
            for j in k..n {
                let v = &work[r][j] - &factor * &work[k][j];
                work[r][j] = v;
            }
        }
    }
    d
}
