//! Lattice points of rational polytopes.
//!
//! Enumeration scans the integer grid of the bounding box and classifies
//! each hit as relative-interior or relative-boundary. Full-dimensional
//! polytopes are classified against their facet description; lower-
//! dimensional ones against the facet description of their image in an
//! affine chart, so "interior" always means *relative* interior.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{rat, Int, IntVec, RatVec};
use crate::polytope::VPolytope;

/// Guard against runaway grid scans.
const MAX_GRID: u64 = 20_000_000;

/// Lattice points of a polytope, split by relative position.
/// All three lists are sorted; `points` is the disjoint union of
/// `interior` and `boundary`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    pub points: Vec<IntVec>,
    pub interior: Vec<IntVec>,
    pub boundary: Vec<IntVec>,
}

impl LatticePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &IntVec) -> bool {
        self.points.binary_search(x).is_ok()
    }
}

/// All lattice points of `p`, classified by relative interior/boundary.
pub fn enumerate_lattice_points(p: &VPolytope) -> Result<LatticePointSet> {
    let d = p.ambient_dim();
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for (a, b) in p.bounding_box() {
        let la = a.ceil().to_integer();
        let hb = b.floor().to_integer();
        lo.push(la);
        hi.push(hb);
    }
    let mut grid: u64 = 1;
    for i in 0..d {
        if hi[i] < lo[i] {
            return Ok(LatticePointSet {
                points: vec![],
                interior: vec![],
                boundary: vec![],
            });
        }
        let span = (&hi[i] - &lo[i] + Int::from(1))
            .to_u64()
            .ok_or_else(|| Error::Unsupported("bounding box too large to scan".into()))?;
        grid = grid
            .checked_mul(span)
            .filter(|g| *g <= MAX_GRID)
            .ok_or_else(|| Error::Unsupported("bounding box too large to scan".into()))?;
    }

    let dim = p.dim();
    let mut points = Vec::new();
    let mut interior = Vec::new();
    let mut boundary = Vec::new();

    // membership and strict-membership tests, specialized by dimension
    enum Tester {
        Point(RatVec),
        Full(crate::polytope::HPolyhedron),
        Chart {
            chart: crate::polytope::AffineHull,
            local: crate::polytope::HPolyhedron,
        },
    }
    let tester = if dim == 0 {
        Tester::Point(p.vertices()[0].clone())
    } else if dim == d {
        let (h, _) = p.v_to_h()?;
        Tester::Full(h)
    } else {
        let chart = p.affine_hull();
        let locals: Vec<RatVec> = p
            .vertices()
            .iter()
            .map(|v| {
                chart
                    .local_coordinates(v)
                    .expect("vertex lies on the affine hull")
            })
            .collect();
        let local_poly = VPolytope::new(dim, &locals)?;
        let (local, _) = local_poly.v_to_h()?;
        Tester::Chart { chart, local }
    };

    let mut coords = lo.clone();
    'scan: loop {
        let x = IntVec::new(coords.clone());
        let xr = x.to_rat();
        match &tester {
            Tester::Point(v) => {
                if *v == xr {
                    points.push(x.clone());
                    // the relative interior of a point is the point
                    interior.push(x);
                }
            }
            Tester::Full(h) => {
                if h.contains(&xr) {
                    points.push(x.clone());
                    if h.strictly_contains(&xr) {
                        interior.push(x);
                    } else {
                        boundary.push(x);
                    }
                }
            }
            Tester::Chart { chart, local } => {
                if let Some(t) = chart.local_coordinates(&xr) {
                    if local.contains(&t) {
                        points.push(x.clone());
                        if local.strictly_contains(&t) {
                            interior.push(x);
                        } else {
                            boundary.push(x);
                        }
                    }
                }
            }
        }
        // odometer
        for i in 0..d {
            coords[i] += Int::from(1);
            if coords[i] <= hi[i] {
                continue 'scan;
            }
            coords[i] = lo[i].clone();
        }
        break;
    }
    points.sort();
    interior.sort();
    boundary.sort();
    Ok(LatticePointSet {
        points,
        interior,
        boundary,
    })
}

/// The center of symmetry of `p`, if `p` is centrally symmetric.
///
/// The only possible center is the midpoint of the lexicographically
/// smallest and largest vertices (reflection reverses lexicographic
/// order), so that single candidate is verified against the whole vertex
/// set.
pub fn symmetry_center(p: &VPolytope) -> Option<RatVec> {
    let vs = p.vertices();
    let c = vs[0].add(&vs[vs.len() - 1]).scale(&rat(1, 2));
    let twice_c = c.scale(&rat(2, 1));
    let mut reflected: Vec<RatVec> = vs.iter().map(|v| twice_c.sub(v)).collect();
    reflected.sort();
    if reflected.as_slice() == vs {
        Some(c)
    } else {
        None
    }
}

/// True iff `p = -p`.
pub fn is_origin_symmetric(p: &VPolytope) -> bool {
    matches!(symmetry_center(p), Some(c) if c.is_zero())
}

/// True iff the origin is the unique interior lattice point of `p`
/// (the standing hypothesis of the lattice-point bounds). Requires `p`
/// full-dimensional so that interior means interior.
pub fn origin_is_only_interior_point(p: &VPolytope) -> Result<bool> {
    if p.dim() < p.ambient_dim() {
        return Err(Error::LowerDimensional {
            ambient: p.ambient_dim(),
            actual: p.dim(),
        });
    }
    let pts = enumerate_lattice_points(p)?;
    Ok(pts.interior.len() == 1 && pts.interior[0].is_zero())
}
