//! Rational polytopes and polyhedra.
//!
//! `VPolytope` is a canonical vertex description (sorted, irredundant);
//! `HPolyhedron` a canonical inequality description (primitive integer
//! normals, sorted, irredundant whenever the set is nonempty). Conversions
//! between the two are exhaustive-search based: the instances this crate
//! targets live in dimension <= 4 with modest vertex counts, where
//! enumerating all d-subsets is both exact and fast. Exactness is the
//! design driver throughout; no epsilon appears anywhere.

mod cone;
mod volume;

pub use cone::{recession_cone, RecessionCone};
pub use volume::{inscribed_simplex, volume};

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVec, Rat, RatVec};
use crate::lp::{self, LpResult};
use crate::ratmat;

/// Polytope in vertex representation.
/// Invariants: nonempty, all vertices of the stated ambient dimension,
/// sorted lexicographically, and no vertex is a convex combination of the
/// others.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VPolytope {
    ambient: usize,
    vertices: Vec<RatVec>,
}

/// Polyhedron in inequality representation: the set of `x` with
/// `normal . x >= rhs` for every constraint.
/// Invariants: normals are primitive integer vectors, constraints sorted,
/// and (for feasible systems) no constraint is implied by the others.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPolyhedron {
    ambient: usize,
    constraints: Vec<(IntVec, Rat)>,
}

/// One facet of a full-dimensional polytope: `outer_normal . x <= height`
/// holds on the polytope with equality exactly on the facet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Facet {
    pub outer_normal: IntVec,
    pub height: Rat,
    /// Indices into the parent polytope's vertex list of the vertices
    /// lying on this facet.
    pub vertex_indices: Vec<usize>,
}

/// Full-dimensional simplex inscribed in a polytope, with the norm bound
/// that turns it into a width lower bound: for every integer direction
/// `v`, `width(P, v) >= linf(v) / bound_norm`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplexWitness {
    pub base_vertex: RatVec,
    /// Edge vectors from the base vertex, one per row.
    pub edges: Vec<RatVec>,
    /// Maximum absolute row sum of the inverse of the edge matrix.
    pub bound_norm: Rat,
}

/// A parsed problem instance: either representation.
#[derive(Clone, PartialEq, Debug)]
pub enum Instance {
    Polytope(VPolytope),
    Polyhedron(HPolyhedron),
}

impl Instance {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Instance::Polytope(p) => p.ambient_dim(),
            Instance::Polyhedron(q) => q.ambient_dim(),
        }
    }
}

/// Canonical vertex description of the convex hull of `points`.
///
/// Exact duplicates are removed first; afterwards a point is kept iff it is
/// not a convex combination of the other kept points, decided by exact
/// linear feasibility.
pub fn hull_canonicalize(ambient: usize, points: &[RatVec]) -> Result<VPolytope> {
    if points.is_empty() {
        return Err(Error::EmptyInput("hull of no points"));
    }
    for p in points {
        if p.len() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                actual: p.len(),
            });
        }
    }
    let mut kept: Vec<RatVec> = points.to_vec();
    kept.sort();
    kept.dedup();
    let mut i = 0;
    while i < kept.len() && kept.len() > 1 {
        let others: Vec<RatVec> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if lp::convex_combination_feasible(&kept[i], &others) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(VPolytope {
        ambient,
        vertices: kept,
    })
}

/// Affine hull of a point set: a base point, a rational basis of the
/// direction space, and the affine dimension.
#[derive(Clone, Debug)]
pub struct AffineHull {
    pub base: RatVec,
    pub basis: Vec<RatVec>,
}

impl AffineHull {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in this chart, or `None` if `x` is off the hull.
    /// Requires `dim >= 1`.
    pub fn local_coordinates(&self, x: &RatVec) -> Option<RatVec> {
        assert!(
            !self.basis.is_empty(),
            "no chart on a zero-dimensional hull"
        );
        let d = self.base.len();
        let rows: Vec<RatVec> = (0..d)
            .map(|i| RatVec::new(self.basis.iter().map(|b| b[i].clone()).collect()))
            .collect();
        let rhs: Vec<Rat> = x.sub(&self.base).entries().to_vec();
        let t = ratmat::solve(&rows, &rhs)?;
        // `solve` finds some solution of the possibly-overdetermined
        // system; verify it reproduces x exactly.
        if self.embed(&t) == *x {
            Some(t)
        } else {
            None
        }
    }

    pub fn embed(&self, t: &RatVec) -> RatVec {
        assert_eq!(t.len(), self.basis.len());
        let mut out = self.base.clone();
        for (tj, bj) in t.iter().zip(self.basis.iter()) {
            out = out.add(&bj.scale(tj));
        }
        out
    }
}

impl VPolytope {
    /// Construct via `hull_canonicalize`.
    pub fn new(ambient: usize, points: &[RatVec]) -> Result<Self> {
        hull_canonicalize(ambient, points)
    }

    pub fn from_i64_points(ambient: usize, points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<RatVec> = points.iter().map(|p| RatVec::from_i64(p)).collect();
        hull_canonicalize(ambient, &pts)
    }

    /// Internal constructor for vertex sets already known to be canonical
    /// up to ordering (e.g. images under invertible affine maps).
    pub(crate) fn from_extreme_points(ambient: usize, mut vertices: Vec<RatVec>) -> Self {
        vertices.sort();
        vertices.dedup();
        VPolytope { ambient, vertices }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Support value `max { v . x : x in P }`.
    pub fn support(&self, v: &IntVec) -> Rat {
        assert_eq!(v.len(), self.ambient);
        self.vertices
            .iter()
            .map(|x| v.dot_rat(x))
            .max()
            .expect("nonempty vertex set")
    }

    pub fn support_rat(&self, v: &RatVec) -> Rat {
        assert_eq!(v.len(), self.ambient);
        self.vertices
            .iter()
            .map(|x| v.dot(x))
            .max()
            .expect("nonempty vertex set")
    }

    pub fn affine_hull(&self) -> AffineHull {
        let base = self.vertices[0].clone();
        let diffs: Vec<RatVec> = self.vertices[1..].iter().map(|v| v.sub(&base)).collect();
        let mut work: Vec<Vec<Rat>> = diffs.iter().map(|r| r.entries().to_vec()).collect();
        ratmat::rref(&mut work);
        let basis = work
            .into_iter()
            .map(RatVec::new)
            .filter(|r| !r.is_zero())
            .collect();
        AffineHull { base, basis }
    }

    pub fn dim(&self) -> usize {
        self.affine_hull().dim()
    }

    pub fn is_full_dim(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Exact membership via convex-combination feasibility. Works in any
    /// dimension; full-dimensional callers on a hot path should prefer the
    /// facet description.
    pub fn contains(&self, x: &RatVec) -> bool {
        lp::convex_combination_feasible(x, &self.vertices)
    }

    /// Facet description of a full-dimensional polytope, by exhaustive
    /// search over all d-subsets of vertices. Returns the irredundant
    /// inequality description and the facet list with incidences.
    pub fn v_to_h(&self) -> Result<(HPolyhedron, Vec<Facet>)> {
        let d = self.ambient;
        let dim = self.dim();
        if dim < d {
            return Err(Error::LowerDimensional {
                ambient: d,
                actual: dim,
            });
        }
        let facets = facet_search(&self.vertices, d);
        let constraints: Vec<(IntVec, Rat)> = facets
            .iter()
            .map(|f| (f.outer_normal.neg(), -f.height.clone()))
            .collect();
        Ok((HPolyhedron::from_canonical_facets(d, constraints), facets))
    }

    pub fn translate(&self, t: &RatVec) -> VPolytope {
        assert_eq!(t.len(), self.ambient);
        // translation preserves lexicographic order and extremity
        VPolytope {
            ambient: self.ambient,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
        }
    }

    /// Dilation by a positive rational factor.
    pub fn dilate(&self, k: &Rat) -> VPolytope {
        assert!(k.is_positive(), "dilation factor must be positive");
        VPolytope {
            ambient: self.ambient,
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
        }
    }

    /// Image under an invertible integer matrix (columns convention:
    /// vertex x maps to T x).
    pub fn linear_image(&self, t: &crate::linalg::IntMat) -> VPolytope {
        assert!(t.is_unimodular() || !ratmat::det(&t.to_rat_rows()).is_zero());
        let vertices: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| RatVec::new(t.rows().iter().map(|r| r.dot_rat(v)).collect()))
            .collect();
        VPolytope::from_extreme_points(self.ambient, vertices)
    }

    pub fn negate(&self) -> VPolytope {
        VPolytope::from_extreme_points(
            self.ambient,
            self.vertices.iter().map(|v| v.neg()).collect(),
        )
    }

    /// Per-coordinate (min, max) over the vertex set.
    pub fn bounding_box(&self) -> Vec<(Rat, Rat)> {
        (0..self.ambient)
            .map(|i| {
                let mut lo = self.vertices[0][i].clone();
                let mut hi = lo.clone();
                for v in &self.vertices[1..] {
                    if v[i] < lo {
                        lo = v[i].clone();
                    }
                    if v[i] > hi {
                        hi = v[i].clone();
                    }
                }
                (lo, hi)
            })
            .collect()
    }

    /// Arithmetic mean of the vertices.
    pub fn vertex_centroid(&self) -> RatVec {
        let n = Rat::from_integer(Int::from(self.vertices.len() as i64));
        let mut sum = RatVec::zeros(self.ambient);
        for v in &self.vertices {
            sum = sum.add(v);
        }
        sum.scale(&(Rat::from_integer(Int::from(1)) / n))
    }
}

/// Exhaustive facet search: every subset of `ambient` points spanning a
/// hyperplane is tested for being a supporting hyperplane. Requires the
/// point set to be full-dimensional. Facets are returned sorted by
/// (outer normal, height).
pub(crate) fn facet_search(points: &[RatVec], ambient: usize) -> Vec<Facet> {
    let n = points.len();
    let mut found: BTreeMap<(IntVec, Rat), Vec<usize>> = BTreeMap::new();
    each_combination(n, ambient, &mut |subset| {
        let base = &points[subset[0]];
        let diffs: Vec<RatVec> = subset[1..].iter().map(|&i| points[i].sub(base)).collect();
        let null = ratmat::nullspace(&diffs, ambient);
        if null.len() != 1 {
            return; // subset does not span a hyperplane
        }
        let (normal, _) = null[0]
            .primitive_direction()
            .expect("nullspace basis vector is nonzero");
        let h = normal.dot_rat(base);
        let mut any_below = false;
        let mut any_above = false;
        for p in points {
            let val = normal.dot_rat(p);
            if val < h {
                any_below = true;
            } else if val > h {
                any_above = true;
            }
            if any_below && any_above {
                return; // not supporting
            }
        }
        let (outer, height) = if any_above {
            (normal.neg(), -h)
        } else {
            (normal, h)
        };
        found.entry((outer, height)).or_default();
    });
    found
        .into_iter()
        .map(|((outer_normal, height), _)| {
            let vertex_indices: Vec<usize> = points
                .iter()
                .enumerate()
                .filter(|(_, p)| outer_normal.dot_rat(p) == height)
                .map(|(i, _)| i)
                .collect();
            Facet {
                outer_normal,
                height,
                vertex_indices,
            }
        })
        .collect()
}

/// Call `f` on every k-subset of `0..n` in lexicographic order.
pub(crate) fn each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Generator description of a polyhedron: `conv(points) + cone(rays) +
/// span(lineality)`.
#[derive(Clone, Debug)]
pub struct VertexDescription {
    pub points: Vec<RatVec>,
    pub rays: Vec<IntVec>,
    pub lineality: crate::linalg::IntMat,
}

impl HPolyhedron {
    /// Canonicalize: primitive normals, sorted, duplicates removed, and —
    /// when the system is feasible — redundant constraints removed.
    pub fn new(ambient: usize, raw: &[(IntVec, Rat)]) -> Result<Self> {
        let mut cons: Vec<(IntVec, Rat)> = Vec::with_capacity(raw.len());
        for (normal, rhs) in raw {
            if normal.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    actual: normal.len(),
                });
            }
            if normal.is_zero() {
                return Err(Error::Parse(
                    "inequality with zero normal vector".to_string(),
                ));
            }
            let (p, c) = normal.primitive_part()?;
            cons.push((p, rhs / Rat::from_integer(c)));
        }
        cons.sort();
        cons.dedup();
        let mut q = HPolyhedron {
            ambient,
            constraints: cons,
        };
        if q.feasible_point().is_some() {
            q.remove_redundant();
        }
        Ok(q)
    }

    /// Internal: facet lists from `v_to_h` are already irredundant,
    /// primitive, and only need sorting.
    pub(crate) fn from_canonical_facets(ambient: usize, mut cons: Vec<(IntVec, Rat)>) -> Self {
        cons.sort();
        HPolyhedron {
            ambient,
            constraints: cons,
        }
    }

    fn remove_redundant(&mut self) {
        let mut i = 0;
        while i < self.constraints.len() {
            if self.constraints.len() == 1 {
                break;
            }
            let (normal, rhs) = self.constraints[i].clone();
            let others: Vec<(RatVec, Rat)> = self
                .constraints
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (n, b))| (n.to_rat(), b.clone()))
                .collect();
            // redundant iff min normal.x over the others still >= rhs
            let redundant = match lp::maximize(&normal.to_rat().neg(), &others) {
                LpResult::Optimal(_, neg_min) => -neg_min >= rhs,
                LpResult::Unbounded => false,
                LpResult::Infeasible => unreachable!("relaxation of a feasible system"),
            };
            if redundant {
                self.constraints.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn constraints(&self) -> &[(IntVec, Rat)] {
        &self.constraints
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.constraints.iter().all(|(n, b)| n.dot_rat(x) >= *b)
    }

    pub fn strictly_contains(&self, x: &RatVec) -> bool {
        self.constraints.iter().all(|(n, b)| n.dot_rat(x) > *b)
    }

    pub fn feasible_point(&self) -> Option<RatVec> {
        if self.constraints.is_empty() {
            return Some(RatVec::zeros(self.ambient));
        }
        let cons: Vec<(RatVec, Rat)> = self
            .constraints
            .iter()
            .map(|(n, b)| (n.to_rat(), b.clone()))
            .collect();
        lp::feasible_point(&cons)
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    pub fn translate(&self, t: &RatVec) -> HPolyhedron {
        assert_eq!(t.len(), self.ambient);
        HPolyhedron::from_canonical_facets(
            self.ambient,
            self.constraints
                .iter()
                .map(|(n, b)| (n.clone(), b + n.dot_rat(t)))
                .collect(),
        )
    }

    pub fn dilate(&self, k: &Rat) -> HPolyhedron {
        assert!(k.is_positive());
        HPolyhedron::from_canonical_facets(
            self.ambient,
            self.constraints
                .iter()
                .map(|(n, b)| (n.clone(), b * k))
                .collect(),
        )
    }

    /// Minkowski-Weyl generator description. Errors on empty input.
    pub fn vertex_description(&self) -> Result<VertexDescription> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let rec = recession_cone(self)?;
        let lin_rows: Vec<RatVec> = rec.lineality.rows().iter().map(|r| r.to_rat()).collect();
        let ell = lin_rows.len();
        let d = self.ambient;
        let m = self.constraints.len();
        let take = d - ell;
        let mut points: Vec<RatVec> = Vec::new();
        each_combination(m, take, &mut |subset| {
            let mut rows: Vec<RatVec> = subset
                .iter()
                .map(|&i| self.constraints[i].0.to_rat())
                .collect();
            let mut rhs: Vec<Rat> = subset
                .iter()
                .map(|&i| self.constraints[i].1.clone())
                .collect();
            rows.extend(lin_rows.iter().cloned());
            rhs.extend((0..ell).map(|_| Rat::zero()));
            if ratmat::rank(&rows) < d {
                return;
            }
            let Some(x) = ratmat::solve(&rows, &rhs) else {
                return;
            };
            if self.contains(&x) {
                points.push(x);
            }
        });
        points.sort();
        points.dedup();
        Ok(VertexDescription {
            points,
            rays: rec.generators,
            lineality: rec.lineality,
        })
    }

    /// Vertex representation of a bounded polyhedron; errors if empty or
    /// unbounded.
    pub fn to_vpolytope(&self) -> Result<VPolytope> {
        let desc = self.vertex_description()?;
        if !desc.rays.is_empty() || desc.lineality.nrows() > 0 {
            return Err(Error::Unsupported(
                "polyhedron is unbounded; no vertex representation".to_string(),
            ));
        }
        // vertices of a pointed polyhedron are already extreme
        Ok(VPolytope::from_extreme_points(self.ambient, desc.points))
    }
}

/// Affine dimension of the intersection of two bounded polyhedra, or
/// `None` if the intersection is empty. Used for exact interior-
/// disjointness: two full-dimensional polytopes have disjoint interiors
/// iff their intersection is empty or lower-dimensional.
pub fn intersection_dim(p: &HPolyhedron, q: &HPolyhedron) -> Result<Option<usize>> {
    assert_eq!(p.ambient, q.ambient);
    let mut cons = p.constraints.clone();
    cons.extend(q.constraints.iter().cloned());
    let stacked = HPolyhedron::from_canonical_facets(p.ambient, cons);
    if stacked.is_empty() {
        return Ok(None);
    }
    let desc = stacked.vertex_description()?;
    if !desc.rays.is_empty() || desc.lineality.nrows() > 0 {
        return Err(Error::Unsupported(
            "intersection of unbounded polyhedra".to_string(),
        ));
    }
    let vp = VPolytope::from_extreme_points(p.ambient, desc.points);
    Ok(Some(vp.dim()))
}
