//! Exact volume and inscribed-simplex witnesses.
//!
//! Volume is computed by coning: pick the first vertex as apex, triangulate
//! every facet not containing it (recursively, in an affine chart of the
//! facet), and sum |det(edges)| / d! over the resulting simplices. All
//! arithmetic is rational.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Int, Rat, RatVec};
use crate::ratmat;

use super::{facet_search, AffineHull, SimplexWitness, VPolytope};

/// Exact volume of a full-dimensional polytope.
pub fn volume(p: &VPolytope) -> Result<Rat> {
    let d = p.ambient_dim();
    let dim = p.dim();
    if dim < d {
        return Err(Error::LowerDimensional {
            ambient: d,
            actual: dim,
        });
    }
    let verts = p.vertices();
    let mut total = Rat::zero();
    let dfact = Rat::from_integer(factorial(d));
    for simplex in triangulate(verts, d) {
        let base = &verts[simplex[0]];
        let edges: Vec<RatVec> = simplex[1..].iter().map(|&i| verts[i].sub(base)).collect();
        total += ratmat::det(&edges).abs() / dfact.clone();
    }
    Ok(total)
}

fn factorial(n: usize) -> Int {
    (1..=n as i64).fold(Int::from(1), |acc, k| acc * Int::from(k))
}

/// Combinatorial triangulation of a full-dimensional polytope given by its
/// extreme points: returns index sets of size d+1. Facets not containing
/// point 0 are triangulated recursively in a chart and coned to point 0.
fn triangulate(points: &[RatVec], d: usize) -> Vec<Vec<usize>> {
    if d == 1 {
        let mut lo = 0usize;
        let mut hi = 0usize;
        for (i, p) in points.iter().enumerate() {
            if p[0] < points[lo][0] {
                lo = i;
            }
            if p[0] > points[hi][0] {
                hi = i;
            }
        }
        return vec![vec![lo, hi]];
    }
    let facets = facet_search(points, d);
    let mut out = Vec::new();
    for f in &facets {
        if f.vertex_indices.contains(&0) {
            continue;
        }
        let fpts: Vec<RatVec> = f
            .vertex_indices
            .iter()
            .map(|&i| points[i].clone())
            .collect();
        let chart = chart_of(&fpts);
        let local: Vec<RatVec> = fpts
            .iter()
            .map(|q| {
                chart
                    .local_coordinates(q)
                    .expect("facet vertex lies on its own hyperplane")
            })
            .collect();
        for sub in triangulate(&local, d - 1) {
            let mut s: Vec<usize> = sub.iter().map(|&j| f.vertex_indices[j]).collect();
            s.push(0);
            out.push(s);
        }
    }
    out
}

fn chart_of(points: &[RatVec]) -> AffineHull {
    let base = points[0].clone();
    let mut work: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|q| q.sub(&base).entries().to_vec())
        .collect();
    ratmat::rref(&mut work);
    let basis = work
        .into_iter()
        .map(RatVec::new)
        .filter(|r| !r.is_zero())
        .collect();
    AffineHull { base, basis }
}

/// Greedy full-dimensional simplex inscribed in `p`, chosen to maximize
/// squared volume one edge at a time (compared through Gram determinants,
/// so no square roots appear). The returned `bound_norm` is the maximum
/// absolute row sum of the inverse edge matrix; it certifies
/// `width(p, v) >= linf(v) / bound_norm` for every integer direction `v`.
pub fn inscribed_simplex(p: &VPolytope) -> Result<SimplexWitness> {
    let d = p.ambient_dim();
    let dim = p.dim();
    if dim < d {
        return Err(Error::LowerDimensional {
            ambient: d,
            actual: dim,
        });
    }
    let verts = p.vertices();
    let base = verts[0].clone();
    let mut edges: Vec<RatVec> = Vec::with_capacity(d);
    for _ in 0..d {
        let mut best: Option<(Rat, RatVec)> = None;
        for v in &verts[1..] {
            let e = v.sub(&base);
            let mut trial = edges.clone();
            trial.push(e.clone());
            let g = gram_det(&trial);
            if g.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(b, _)| g > *b) {
                best = Some((g, e));
            }
        }
        let (_, e) = best.expect("full-dimensional polytope admits an independent edge");
        edges.push(e);
    }
    let inv = ratmat::inverse(&edges).expect("edge matrix of a full-dimensional simplex");
    let bound_norm = inv
        .iter()
        .map(|row| row.iter().fold(Rat::zero(), |acc, x| acc + x.abs()))
        .max()
        .expect("nonempty inverse");
    Ok(SimplexWitness {
        base_vertex: base,
        edges,
        bound_norm,
    })
}

fn gram_det(edges: &[RatVec]) -> Rat {
    let g: Vec<RatVec> = edges
        .iter()
        .map(|a| RatVec::new(edges.iter().map(|b| a.dot(b)).collect()))
        .collect();
    ratmat::det(&g)
}

impl SimplexWitness {
    /// Re-verify what the witness asserts: every simplex vertex lies in
    /// `p`, the edges are independent, and the stored bound is exactly the
    /// max absolute row sum of the inverse edge matrix.
    pub fn soundness_check(&self, p: &VPolytope) -> bool {
        if !p.contains(&self.base_vertex) {
            return false;
        }
        for e in &self.edges {
            if !p.contains(&self.base_vertex.add(e)) {
                return false;
            }
        }
        let Some(inv) = ratmat::inverse(&self.edges) else {
            return false;
        };
        let norm = inv
            .iter()
            .map(|row| row.iter().fold(Rat::zero(), |acc, x| acc + x.abs()))
            .max()
            .expect("nonempty inverse");
        norm == self.bound_norm
    }

    /// The certified lower bound on `width(p, v)` for an integer `v`.
    pub fn width_lower_bound(&self, v: &crate::linalg::IntVec) -> Rat {
        Rat::from_integer(v.linf_norm()) / self.bound_norm.clone()
    }
}
