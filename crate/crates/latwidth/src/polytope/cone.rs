//! Recession cones of rational polyhedra.
//!
//! The recession cone of `{x : a_i . x >= b_i}` is `{y : a_i . y >= 0}`.
//! It is computed by incremental double description: halfspaces are
//! inserted one at a time into a generator description (lineality basis
//! plus extreme rays), all in exact integer arithmetic. After every
//! insertion the ray list is filtered back down to extreme rays by an
//! active-constraint rank test, which keeps intermediate sets small and
//! makes the final generator list canonical.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Int, IntMat, IntVec};
use crate::ratmat;

use super::HPolyhedron;

/// Generator description of a recession cone:
/// `cone = { Σ λ_j generators[j] : λ >= 0 } + span(lineality rows)`.
#[derive(Clone, Debug)]
pub struct RecessionCone {
    /// Extreme rays of the pointed part, primitive and sorted.
    pub generators: Vec<IntVec>,
    /// Canonical integer basis (possibly empty) of the lineality space.
    pub lineality: IntMat,
    /// Dimension of the cone as a set.
    pub cone_dim: usize,
}

impl RecessionCone {
    pub fn lineality_dim(&self) -> usize {
        self.lineality.nrows()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty() && self.lineality.nrows() == 0
    }
}

/// Recession cone of a nonempty polyhedron.
pub fn recession_cone(q: &HPolyhedron) -> Result<RecessionCone> {
    if q.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let d = q.ambient_dim();
    let normals: Vec<IntVec> = q.constraints().iter().map(|(n, _)| n.clone()).collect();
    let (rays, _) = dd_cone(&normals, d);
    let lineality = IntMat::from_rows(d, normals.clone()).integer_kernel();
    let mut span_rows: Vec<crate::linalg::RatVec> = rays.iter().map(|r| r.to_rat()).collect();
    span_rows.extend(lineality.rows().iter().map(|l| l.to_rat()));
    let cone_dim = ratmat::rank(&span_rows);
    Ok(RecessionCone {
        generators: rays,
        lineality,
        cone_dim,
    })
}

/// Double description of `{ y : n . y >= 0 for every n in normals }`.
/// Returns (extreme rays of the pointed part, lineality basis), both as
/// primitive integer vectors. The lineality basis here is a working basis,
/// not canonicalized; callers wanting a canonical one should use
/// `integer_kernel` on the normal matrix.
fn dd_cone(normals: &[IntVec], d: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut lineality: Vec<IntVec> = (0..d).map(|i| IntVec::unit(d, i)).collect();
    let mut rays: Vec<IntVec> = Vec::new();
    for (k, a) in normals.iter().enumerate() {
        let pivot = lineality.iter().position(|l| !a.dot(l).is_zero());
        if let Some(pi) = pivot {
            // a is not identically zero on the lineality space: one basis
            // vector leaves the lineality and becomes a ray.
            let mut l0 = lineality.remove(pi);
            if a.dot(&l0) < Int::zero() {
                l0 = l0.neg();
            }
            let al0 = a.dot(&l0);
            lineality = lineality
                .iter()
                .map(|l| {
                    let c = a.dot(l);
                    primitive(&l.scale(&al0).sub(&l0.scale(&c)))
                })
                .collect();
            rays = rays
                .iter()
                .map(|r| {
                    let c = a.dot(r);
                    primitive(&r.scale(&al0).sub(&l0.scale(&c)))
                })
                .collect();
            rays.push(l0);
        } else {
            // a vanishes on the lineality space: split the rays.
            let mut plus: Vec<IntVec> = Vec::new();
            let mut zero: Vec<IntVec> = Vec::new();
            let mut minus: Vec<IntVec> = Vec::new();
            for r in &rays {
                let v = a.dot(r);
                if v > Int::zero() {
                    plus.push(r.clone());
                } else if v < Int::zero() {
                    minus.push(r.clone());
                } else {
                    zero.push(r.clone());
                }
            }
            let mut next: BTreeSet<IntVec> = plus.iter().cloned().collect();
            next.extend(zero.iter().cloned());
            for p in &plus {
                for n in &minus {
                    // positive combination annihilated by a
                    let w = n.scale(&a.dot(p)).sub(&p.scale(&a.dot(n)));
                    if !w.is_zero() {
                        next.insert(primitive(&w));
                    }
                }
            }
            rays = next.into_iter().collect();
        }
        rays = filter_extreme(rays, &normals[..=k], d, lineality.len());
    }
    rays.sort();
    (rays, lineality)
}

fn primitive(v: &IntVec) -> IntVec {
    v.primitive_part().expect("nonzero ray").0
}

/// Keep exactly the rays whose active constraint set has rank
/// `d - lineality_dim - 1`: the extreme rays of the current cone.
fn filter_extreme(
    rays: Vec<IntVec>,
    normals: &[IntVec],
    d: usize,
    lineality_dim: usize,
) -> Vec<IntVec> {
    rays.into_iter()
        .filter(|r| {
            let active: Vec<crate::linalg::RatVec> = normals
                .iter()
                .filter(|n| n.dot(r).is_zero())
                .map(|n| n.to_rat())
                .collect();
            d - ratmat::rank(&active) == lineality_dim + 1
        })
        .collect()
}
