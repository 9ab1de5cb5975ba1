//! Instance-level verifiers for the lattice-point bounds, the equality
//! cases (standard cube, regular cross-polytope), the mod-3 completion,
//! the facet-layering structure, and the translate packing.
//!
//! Conventions shared by all verifiers:
//! * hypotheses are *checked*, never assumed; a failed hypothesis is an
//!   `Error::Hypothesis` (an input problem);
//! * a failed conclusion — something the theorems guarantee — is either a
//!   `false` flag in the returned report or an `Error::Violation`,
//!   depending on whether the operation can still produce a report;
//! * recognizers never error: rejection is a value naming the first
//!   failed test.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_lattice_points, is_origin_symmetric, LatticePointSet};
use crate::linalg::{rat_int, Int, IntMat, IntVec, Rat, RatVec};
use crate::lp::{self, LpResult};
use crate::polytope::{volume, HPolyhedron, VPolytope};

/// Outcome of a structure recognizer: a verified witness, or the first
/// failed test by name.
#[derive(Clone, Debug)]
pub enum Recognition<W> {
    Accepted(W),
    Rejected(String),
}

impl<W> Recognition<W> {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Recognition::Accepted(_))
    }

    pub fn rejection_reason(&self) -> Option<&str> {
        match self {
            Recognition::Accepted(_) => None,
            Recognition::Rejected(r) => Some(r),
        }
    }
}

/// Witness that P = conv of all sign combinations of the basis rows.
#[derive(Clone, Debug)]
pub struct CubeWitness {
    pub basis: IntMat,
}

/// Witness that P = conv { center ± scale · basis row_i }.
#[derive(Clone, Debug)]
pub struct CrossWitness {
    pub center: RatVec,
    pub scale: Rat,
    pub basis: IntMat,
}

/// Check the standing hypotheses of the lattice-point bounds: P is
/// full-dimensional, centrally symmetric about the origin, and the origin
/// is its unique interior lattice point. Returns the lattice points so
/// callers need not enumerate twice.
pub fn check_standing_hypotheses(p: &VPolytope) -> Result<LatticePointSet> {
    let d = p.ambient_dim();
    if p.dim() < d {
        return Err(Error::Hypothesis(format!(
            "polytope must be full-dimensional (dim {} < ambient {})",
            p.dim(),
            d
        )));
    }
    if !is_origin_symmetric(p) {
        return Err(Error::Hypothesis(
            "polytope must be centrally symmetric about the origin".to_string(),
        ));
    }
    let pts = enumerate_lattice_points(p)?;
    let origin_only = pts.interior.len() == 1 && pts.interior[0].is_zero();
    if !origin_only {
        return Err(Error::Hypothesis(format!(
            "origin must be the unique interior lattice point (found {} interior points)",
            pts.interior.len()
        )));
    }
    Ok(pts)
}

fn residue_mod3(x: &IntVec) -> Vec<u8> {
    let three = Int::from(3);
    x.iter()
        .map(|e| e.mod_floor(&three).to_u8().expect("residue in 0..3"))
        .collect()
}

/// Count bound |P_Z| <= 3^d together with its proof mechanism, the
/// injectivity of coordinate-wise reduction mod 3 on P_Z.
#[derive(Clone, Debug)]
pub struct ThreePowerReport {
    pub count: usize,
    pub bound: Int,
    pub within_bound: bool,
    pub gamma_injective: bool,
    pub points: Vec<IntVec>,
}

impl ThreePowerReport {
    pub fn passed(&self) -> bool {
        self.within_bound && self.gamma_injective
    }
}

pub fn verify_3d_bound(p: &VPolytope) -> Result<ThreePowerReport> {
    let pts = check_standing_hypotheses(p)?;
    let d = p.ambient_dim();
    let bound = num_traits::pow(Int::from(3), d);
    let count = pts.points.len();
    let residues: BTreeSet<Vec<u8>> = pts.points.iter().map(residue_mod3).collect();
    Ok(ThreePowerReport {
        count,
        within_bound: Int::from(count as u64) <= bound,
        gamma_injective: residues.len() == count,
        bound,
        points: pts.points,
    })
}

/// The convex-position refinement: if no boundary lattice point lies in
/// the hull of the remaining ones, |P_Z| <= 2^(d+1) - 1.
#[derive(Clone, Debug)]
pub struct VertexBoundReport {
    pub condition_holds: bool,
    /// A boundary point inside the hull of the others, when the
    /// condition fails (the bound is then not applicable).
    pub condition_witness: Option<IntVec>,
    pub count: usize,
    pub bound: Int,
    pub within_bound: bool,
}

impl VertexBoundReport {
    pub fn passed(&self) -> bool {
        !self.condition_holds || self.within_bound
    }
}

pub fn verify_vertex_bound(p: &VPolytope) -> Result<VertexBoundReport> {
    let pts = check_standing_hypotheses(p)?;
    let d = p.ambient_dim();
    let boundary_rat: Vec<RatVec> = pts.boundary.iter().map(|b| b.to_rat()).collect();
    let mut witness = None;
    for (i, b) in pts.boundary.iter().enumerate() {
        let others: Vec<RatVec> = boundary_rat
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if others.is_empty() {
            break;
        }
        if lp::convex_combination_feasible(&boundary_rat[i], &others) {
            witness = Some(b.clone());
            break;
        }
    }
    let bound = num_traits::pow(Int::from(2), d + 1) - Int::from(1);
    let count = pts.points.len();
    Ok(VertexBoundReport {
        condition_holds: witness.is_none(),
        condition_witness: witness,
        count,
        within_bound: Int::from(count as u64) <= bound,
        bound,
    })
}

/// Lookup table realizing the mod-3 completion on a 3^d-point instance.
pub struct Mod3Table {
    points: LatticePointSet,
    by_residue: BTreeMap<Vec<u8>, IntVec>,
}

/// Build the completion table. Requires the standing hypotheses and
/// |P_Z| = 3^d (reduction mod 3 bijective).
pub fn mod3_table(p: &VPolytope) -> Result<Mod3Table> {
    let pts = check_standing_hypotheses(p)?;
    let d = p.ambient_dim();
    let bound = num_traits::pow(Int::from(3), d);
    if Int::from(pts.points.len() as u64) != bound {
        return Err(Error::GammaNotBijective(format!(
            "instance has {} lattice points, need {}",
            pts.points.len(),
            bound
        )));
    }
    let mut by_residue = BTreeMap::new();
    for x in &pts.points {
        if by_residue.insert(residue_mod3(x), x.clone()).is_some() {
            return Err(Error::Violation(
                "reduction mod 3 is not injective on the lattice points".to_string(),
            ));
        }
    }
    Ok(Mod3Table {
        points: pts,
        by_residue,
    })
}

impl Mod3Table {
    pub fn points(&self) -> &LatticePointSet {
        &self.points
    }

    /// The unique z with x + y + z ≡ 0 (mod 3), and w = (x+y+z)/3.
    /// Verifies the guaranteed conclusions: w is again a lattice point of
    /// the polytope, and z avoids x and y whenever x ≠ y.
    pub fn complete(&self, x: &IntVec, y: &IntVec) -> Result<(IntVec, IntVec)> {
        for pt in [x, y] {
            if !self.points.contains(pt) {
                return Err(Error::PointNotInSet(pt.to_string()));
            }
        }
        let rx = residue_mod3(x);
        let ry = residue_mod3(y);
        let target: Vec<u8> = rx
            .iter()
            .zip(ry.iter())
            .map(|(a, b)| (15 - a - b) % 3) // -(a+b) mod 3, kept nonnegative
            .collect();
        let z = self
            .by_residue
            .get(&target)
            .expect("table covers all residues")
            .clone();
        let sum = x.add(y).add(&z);
        let three = Int::from(3);
        let w = IntVec::new(sum.iter().map(|s| s / &three).collect());
        if !self.points.contains(&w) {
            return Err(Error::Violation(format!(
                "completion average {w} is not a lattice point of the polytope"
            )));
        }
        if x != y && (z == *x || z == *y) {
            return Err(Error::Violation(format!(
                "completion of distinct points returned an endpoint: z = {z}"
            )));
        }
        Ok((z, w))
    }
}

/// One-shot convenience for a single completion query.
pub fn mod3_complete(p: &VPolytope, x: &IntVec, y: &IntVec) -> Result<(IntVec, IntVec)> {
    mod3_table(p)?.complete(x, y)
}

/// A proper face witnessing the face proposition for one dimension
/// threshold: dim(face) >= k and the face has a relative-interior
/// lattice point.
#[derive(Clone, Debug)]
pub struct FaceWitness {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
    pub point: IntVec,
}

/// Everything the facet-layering analysis establishes on a 3^d-point
/// instance: the chosen facet and interior point, the three layers, and
/// the structural claims checked against them.
#[derive(Clone, Debug)]
pub struct LayeringReport {
    pub facet_normal: IntVec,
    pub facet_height: Rat,
    /// u_F = facet_normal / facet_height.
    pub u_f: RatVec,
    /// Relative-interior lattice point x of the facet.
    pub interior_point: IntVec,
    pub facet_layer: Vec<IntVec>,
    pub middle_layer: Vec<IntVec>,
    pub negated_layer: Vec<IntVec>,
    /// The three layers partition P_Z.
    pub partition_ok: bool,
    /// Adding x maps negated layer onto middle, middle onto facet layer.
    pub bijection_ok: bool,
    /// Every vertex of P lies in the facet layer or its negation.
    pub vertex_claim_ok: bool,
    /// P = conv(F, F - 2x).
    pub prism_ok: bool,
    /// For k = 1..d-1, a face of dimension >= k with a relative-interior
    /// lattice point (index k-1).
    pub face_witnesses: Vec<FaceWitness>,
    pub faces_ok: bool,
}

impl LayeringReport {
    pub fn passed(&self) -> bool {
        self.partition_ok
            && self.bijection_ok
            && self.vertex_claim_ok
            && self.prism_ok
            && self.faces_ok
    }
}

/// All proper faces of `p` as sorted vertex-index sets: the facets and
/// the closure of their pairwise intersections.
fn proper_faces(facet_vertex_sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = facet_vertex_sets.iter().cloned().collect();
    loop {
        let mut fresh: BTreeSet<Vec<usize>> = BTreeSet::new();
        let all: Vec<&Vec<usize>> = faces.iter().collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let inter: Vec<usize> = all[i]
                    .iter()
                    .filter(|v| all[j].binary_search(v).is_ok())
                    .cloned()
                    .collect();
                if !inter.is_empty() && !faces.contains(&inter) {
                    fresh.insert(inter);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        faces.extend(fresh);
    }
    faces.into_iter().collect()
}

pub fn facet_layering(p: &VPolytope) -> Result<LayeringReport> {
    let pts = check_standing_hypotheses(p)?;
    let d = p.ambient_dim();
    if d < 2 {
        return Err(Error::Hypothesis(
            "facet layering needs ambient dimension at least 2".to_string(),
        ));
    }
    let bound = num_traits::pow(Int::from(3), d);
    if Int::from(pts.points.len() as u64) != bound {
        return Err(Error::GammaNotBijective(format!(
            "layering applies to instances with exactly {bound} lattice points, found {}",
            pts.points.len()
        )));
    }
    let (_, facets) = p.v_to_h()?;

    // first facet (in canonical facet order) with a relative-interior
    // lattice point; guaranteed to exist on valid instances
    let mut chosen: Option<(usize, IntVec)> = None;
    for (fi, f) in facets.iter().enumerate() {
        let fverts: Vec<RatVec> = f
            .vertex_indices
            .iter()
            .map(|&i| p.vertices()[i].clone())
            .collect();
        let face = VPolytope::from_extreme_points(d, fverts);
        let flat = enumerate_lattice_points(&face)?;
        if let Some(x) = flat.interior.first() {
            chosen = Some((fi, x.clone()));
            break;
        }
    }
    let Some((fi, x)) = chosen else {
        return Err(Error::Violation(
            "no facet has a relative-interior lattice point".to_string(),
        ));
    };
    let facet = &facets[fi];
    let g = &facet.outer_normal;
    let h = &facet.height;

    let value = |pt: &IntVec| -> Rat { g.dot_rat(&pt.to_rat()) };
    let mut facet_layer = Vec::new();
    let mut middle_layer = Vec::new();
    let mut negated_layer = Vec::new();
    let mut stray = Vec::new();
    for pt in &pts.points {
        let v = value(pt);
        if v == *h {
            facet_layer.push(pt.clone());
        } else if v.is_zero() {
            middle_layer.push(pt.clone());
        } else if v == -h.clone() {
            negated_layer.push(pt.clone());
        } else {
            stray.push(pt.clone());
        }
    }
    let mut reflected: Vec<IntVec> = facet_layer.iter().map(|q| q.neg()).collect();
    reflected.sort();
    let partition_ok = stray.is_empty() && reflected == negated_layer;

    let shift = |layer: &[IntVec]| -> Vec<IntVec> {
        let mut s: Vec<IntVec> = layer.iter().map(|q| q.add(&x)).collect();
        s.sort();
        s
    };
    let bijection_ok = shift(&negated_layer) == middle_layer && shift(&middle_layer) == facet_layer;

    let as_lattice: Vec<Option<IntVec>> = p.vertices().iter().map(|v| v.to_int().ok()).collect();
    let vertex_claim_ok = as_lattice.iter().all(|v| match v {
        Some(z) => facet_layer.binary_search(z).is_ok() || negated_layer.binary_search(z).is_ok(),
        None => false,
    });

    let fverts: Vec<RatVec> = facet
        .vertex_indices
        .iter()
        .map(|&i| p.vertices()[i].clone())
        .collect();
    let two_x = x.to_rat().scale(&rat_int(2));
    let mut prism_pts = fverts.clone();
    prism_pts.extend(fverts.iter().map(|v| v.sub(&two_x)));
    let prism = VPolytope::new(d, &prism_pts)?;
    let prism_ok = prism.vertices() == p.vertices();

    // face proposition: for each k = 1..d-1 a proper face with
    // dim >= k and a relative-interior lattice point, smallest first
    let facet_sets: Vec<Vec<usize>> = facets.iter().map(|f| f.vertex_indices.clone()).collect();
    let mut faces_info: Vec<(usize, Vec<usize>, Option<IntVec>)> = Vec::new();
    for fs in proper_faces(&facet_sets) {
        let verts: Vec<RatVec> = fs.iter().map(|&i| p.vertices()[i].clone()).collect();
        let face = VPolytope::from_extreme_points(d, verts);
        let fdim = face.dim();
        let relint = enumerate_lattice_points(&face)?.interior.first().cloned();
        faces_info.push((fdim, fs, relint));
    }
    faces_info.sort();
    let mut face_witnesses = Vec::new();
    let mut faces_ok = true;
    for k in 1..d {
        let hit = faces_info
            .iter()
            .find(|(fdim, _, relint)| *fdim >= k && relint.is_some());
        match hit {
            Some((fdim, fs, relint)) => face_witnesses.push(FaceWitness {
                vertex_indices: fs.clone(),
                dim: *fdim,
                point: relint.clone().expect("checked above"),
            }),
            None => {
                faces_ok = false;
                break;
            }
        }
    }

    Ok(LayeringReport {
        facet_normal: g.clone(),
        facet_height: h.clone(),
        u_f: g.to_rat().scale(&(rat_int(1) / h.clone())),
        interior_point: x,
        facet_layer,
        middle_layer,
        negated_layer,
        partition_ok,
        bijection_ok,
        vertex_claim_ok,
        prism_ok,
        face_witnesses,
        faces_ok,
    })
}

/// Accepts iff P is the hull of all sign combinations of a unimodular
/// basis. The witness basis rows are sign-canonical and sorted; the hull
/// identity is re-verified before acceptance.
pub fn recognize_standard_cube(p: &VPolytope) -> Recognition<CubeWitness> {
    let d = p.ambient_dim();
    match crate::lattice::symmetry_center(p) {
        Some(c) if c.is_zero() => {}
        Some(_) => return Recognition::Rejected("center of symmetry is not the origin".into()),
        None => return Recognition::Rejected("not centrally symmetric".into()),
    }
    if p.dim() < d {
        return Recognition::Rejected("not full-dimensional".into());
    }
    let (_, facets) = p.v_to_h().expect("full-dimensional by the check above");
    if facets.len() != 2 * d {
        return Recognition::Rejected(format!(
            "facet count {} differs from {}",
            facets.len(),
            2 * d
        ));
    }
    if facets.iter().any(|f| f.height != rat_int(1)) {
        return Recognition::Rejected("facet heights are not all 1".into());
    }
    let normals: BTreeSet<IntVec> = facets.iter().map(|f| f.outer_normal.clone()).collect();
    if normals.iter().any(|n| !normals.contains(&n.neg())) {
        return Recognition::Rejected("facet normals are not paired by sign".into());
    }
    let reps: Vec<IntVec> = normals
        .iter()
        .filter(|n| **n == n.sign_canonical())
        .cloned()
        .collect();
    if reps.len() != d {
        return Recognition::Rejected(format!("{} normal pairs instead of {d}", reps.len()));
    }
    let g = IntMat::from_rows(d, reps);
    if !g.is_unimodular() {
        return Recognition::Rejected("normal matrix is not unimodular".into());
    }
    let e = g.inverse_unimodular().transpose();
    let mut rows: Vec<IntVec> = e.rows().iter().map(|r| r.sign_canonical()).collect();
    rows.sort();
    let basis = IntMat::from_rows(d, rows);
    // re-verify: the hull of all sign combinations equals P exactly
    let mut pts = Vec::with_capacity(1 << d);
    for mask in 0..(1u32 << d) {
        let mut acc = IntVec::zeros(d);
        for i in 0..d {
            let row = basis.row(i);
            acc = if mask & (1 << i) != 0 {
                acc.add(row)
            } else {
                acc.sub(row)
            };
        }
        pts.push(acc.to_rat());
    }
    let hull = match VPolytope::new(d, &pts) {
        Ok(h) => h,
        Err(_) => return Recognition::Rejected("candidate basis spans no polytope".into()),
    };
    if hull.vertices() != p.vertices() {
        return Recognition::Rejected("hull of the candidate basis differs from P".into());
    }
    Recognition::Accepted(CubeWitness { basis })
}

/// Accepts iff P is a regular lattice cross-polytope
/// conv { c ± λ e_i } with a unimodular basis e_i, any rational center c
/// and rational λ > 0. Witness basis rows are sign-canonical and sorted;
/// the hull identity is re-verified before acceptance.
pub fn recognize_cross_polytope(p: &VPolytope) -> Recognition<CrossWitness> {
    let d = p.ambient_dim();
    if p.n_vertices() != 2 * d {
        return Recognition::Rejected(format!(
            "vertex count {} differs from {}",
            p.n_vertices(),
            2 * d
        ));
    }
    let c = p.vertex_centroid();
    let twice_c = c.scale(&rat_int(2));
    let mut reflected: Vec<RatVec> = p.vertices().iter().map(|v| twice_c.sub(v)).collect();
    reflected.sort();
    if reflected.as_slice() != p.vertices() {
        return Recognition::Rejected("vertices do not pair about the centroid".into());
    }
    // one arm per antipodal pair
    let mut arms: Vec<RatVec> = Vec::with_capacity(d);
    let mut seen: BTreeSet<RatVec> = BTreeSet::new();
    for v in p.vertices() {
        if seen.contains(v) {
            continue;
        }
        let partner = twice_c.sub(v);
        if partner == *v {
            return Recognition::Rejected("vertex coincides with the centroid".into());
        }
        seen.insert(partner);
        arms.push(v.sub(&c));
    }
    // the common scale is read off the first arm; every arm must then be
    // an integer (primitive) multiple of it
    let scale = match arms[0].primitive_direction() {
        Ok((_, s)) => s,
        Err(_) => return Recognition::Rejected("degenerate zero arm".into()),
    };
    let mut rows: Vec<IntVec> = Vec::with_capacity(d);
    for arm in &arms {
        let scaled = arm.scale(&(rat_int(1) / scale.clone()));
        let Ok(row) = scaled.to_int() else {
            return Recognition::Rejected(format!(
                "arm {arm} is not an integer multiple of the common scale {scale}"
            ));
        };
        if !row.is_primitive() {
            return Recognition::Rejected(format!("arm direction {row} is not primitive"));
        }
        rows.push(row);
    }
    let basis_raw = IntMat::from_rows(d, rows.clone());
    if !basis_raw.is_unimodular() {
        return Recognition::Rejected("arm directions are not a unimodular basis".into());
    }
    // canonical witness: sign and order of basis vectors are free in the
    // defining hull, so normalize them
    let mut canon: Vec<IntVec> = rows.iter().map(|r| r.sign_canonical()).collect();
    canon.sort();
    let basis = IntMat::from_rows(d, canon);
    let mut pts: Vec<RatVec> = Vec::with_capacity(2 * d);
    for i in 0..d {
        let arm = basis.row(i).to_rat().scale(&scale);
        pts.push(c.add(&arm));
        pts.push(c.sub(&arm));
    }
    let hull = match VPolytope::new(d, &pts) {
        Ok(h) => h,
        Err(_) => return Recognition::Rejected("candidate arms span no polytope".into()),
    };
    if hull.vertices() != p.vertices() {
        return Recognition::Rejected("hull of the candidate arms differs from P".into());
    }
    Recognition::Accepted(CrossWitness {
        center: c,
        scale,
        basis,
    })
}

/// Packing of translates of P by doubled lattice points: containment in
/// 3P, pairwise interior-disjointness, and the volume consequence.
#[derive(Clone, Debug)]
pub struct PackingReport {
    pub translate_count: usize,
    pub contained_ok: bool,
    pub containment_failures: Vec<IntVec>,
    pub disjoint_ok: bool,
    pub overlap_witness: Option<(IntVec, IntVec)>,
    /// |P_Z| · Vol(P)
    pub volume_product: Rat,
    /// 3^d · Vol(P)
    pub volume_bound: Rat,
    pub volume_ok: bool,
    /// Volume equality: the translates tile 3P exactly.
    pub tiles: bool,
}

impl PackingReport {
    pub fn passed(&self) -> bool {
        self.contained_ok && self.disjoint_ok && self.volume_ok
    }
}

/// Exact test: do the interiors of two bounded polyhedra intersect?
/// Decided by maximizing a shared slack over both constraint systems —
/// positive optimum iff a common interior point exists.
fn interiors_intersect(a: &HPolyhedron, b: &HPolyhedron) -> bool {
    let d = a.ambient_dim();
    let mut cons: Vec<(RatVec, Rat)> = Vec::new();
    for (n, rhs) in a.constraints().iter().chain(b.constraints()) {
        let mut row: Vec<Rat> = n.to_rat().entries().to_vec();
        row.push(rat_int(-1));
        cons.push((RatVec::new(row), rhs.clone()));
    }
    let mut obj = vec![Rat::zero(); d + 1];
    obj[d] = rat_int(1);
    match lp::maximize(&RatVec::new(obj), &cons) {
        LpResult::Optimal(_, t) => t.is_positive(),
        LpResult::Unbounded => true,
        LpResult::Infeasible => false,
    }
}

pub fn verify_packing(p: &VPolytope) -> Result<PackingReport> {
    let pts = check_standing_hypotheses(p)?;
    let d = p.ambient_dim();
    let (h, facets) = p.v_to_h()?;
    let tripled = h.dilate(&rat_int(3));
    let bbox = p.bounding_box();
    let facet_widths: Vec<(IntVec, Rat)> = facets
        .iter()
        .map(|f| {
            let g = f.outer_normal.clone();
            let w = p.support(&g) + p.support(&g.neg());
            (g, w)
        })
        .collect();

    let mut containment_failures = Vec::new();
    for alpha in &pts.points {
        let shift = alpha.to_rat().scale(&rat_int(2));
        let inside = p
            .vertices()
            .iter()
            .all(|v| tripled.contains(&v.add(&shift)));
        if !inside {
            containment_failures.push(alpha.clone());
        }
    }

    let mut overlap_witness = None;
    'pairs: for i in 0..pts.points.len() {
        for j in i + 1..pts.points.len() {
            let a = &pts.points[i];
            let b = &pts.points[j];
            let delta = b.sub(a).scale(&Int::from(2));
            // cheap sound separations first
            let bbox_separated = (0..d).any(|k| {
                let span = &bbox[k].1 - &bbox[k].0;
                Rat::from_integer(delta[k].abs()) >= span
            });
            if bbox_separated {
                continue;
            }
            let facet_separated = facet_widths
                .iter()
                .any(|(g, w)| Rat::from_integer(g.dot(&delta).abs()) >= *w);
            if facet_separated {
                continue;
            }
            // exact decision
            let ha = h.translate(&a.to_rat().scale(&rat_int(2)));
            let hb = h.translate(&b.to_rat().scale(&rat_int(2)));
            if interiors_intersect(&ha, &hb) {
                overlap_witness = Some((a.clone(), b.clone()));
                break 'pairs;
            }
        }
    }

    let vol = volume(p)?;
    let volume_product = Rat::from_integer(Int::from(pts.points.len() as u64)) * vol.clone();
    let volume_bound = Rat::from_integer(num_traits::pow(Int::from(3), d)) * vol;
    Ok(PackingReport {
        translate_count: pts.points.len(),
        contained_ok: containment_failures.is_empty(),
        containment_failures,
        disjoint_ok: overlap_witness.is_none(),
        overlap_witness,
        volume_ok: volume_product <= volume_bound,
        tiles: volume_product == volume_bound,
        volume_product,
        volume_bound,
    })
}

/// The equality-case orchestration: count bound, cube recognition, and —
/// on 3^d-point instances — the layering and totality of the mod-3
/// completion. The biconditional (equality iff cube) is the test.
#[derive(Debug)]
pub struct EqualityReport {
    pub three_power: ThreePowerReport,
    pub cube: Recognition<CubeWitness>,
    pub equality: bool,
    /// Present when equality holds and d >= 2.
    pub layering: Option<LayeringReport>,
    /// Present when equality holds: completion defined and internally
    /// consistent on all pairs.
    pub mod3_total: Option<bool>,
    pub consistent: bool,
}

impl EqualityReport {
    pub fn passed(&self) -> bool {
        self.three_power.passed()
            && self.consistent
            && self.layering.as_ref().map_or(true, |l| l.passed())
            && self.mod3_total.unwrap_or(true)
    }
}

pub fn verify_mink_equality(p: &VPolytope) -> Result<EqualityReport> {
    let three_power = verify_3d_bound(p)?;
    let d = p.ambient_dim();
    let equality = Int::from(three_power.count as u64) == three_power.bound;
    let cube = recognize_standard_cube(p);
    let mut layering = None;
    let mut mod3_total = None;
    if equality {
        match facet_layering(p) {
            Ok(rep) => layering = Some(rep),
            // a 3^d instance without a qualifying facet contradicts the
            // equality case; flagged through `consistent` below
            Err(Error::Violation(_)) if d >= 2 => {}
            Err(Error::Hypothesis(_)) if d < 2 => {}
            Err(e) => return Err(e),
        }
        let table = mod3_table(p)?;
        let mut total = true;
        'outer: for x in &three_power.points {
            for y in &three_power.points {
                if table.complete(x, y).is_err() {
                    total = false;
                    break 'outer;
                }
            }
        }
        mod3_total = Some(total);
    }
    let consistent = equality == cube.is_accepted() && (!equality || d < 2 || layering.is_some());
    Ok(EqualityReport {
        three_power,
        cube,
        equality,
        layering,
        mod3_total,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::polytope::intersection_dim;

    fn iv(v: &[i64]) -> IntVec {
        IntVec::from_i64(v)
    }

    fn rv(v: &[i64]) -> RatVec {
        RatVec::from_i64(v)
    }

    fn cube(d: usize) -> VPolytope {
        let mut pts: Vec<RatVec> = Vec::new();
        for mask in 0..(1u32 << d) {
            let coords: Vec<i64> = (0..d)
                .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
                .collect();
            pts.push(RatVec::from_i64(&coords));
        }
        VPolytope::new(d, &pts).unwrap()
    }

    fn cross(d: usize) -> VPolytope {
        let mut pts: Vec<RatVec> = Vec::new();
        for i in 0..d {
            for s in [1i64, -1] {
                let mut v = vec![0i64; d];
                v[i] = s;
                pts.push(RatVec::from_i64(&v));
            }
        }
        VPolytope::new(d, &pts).unwrap()
    }

    fn hexagon() -> VPolytope {
        VPolytope::from_i64_points(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]],
        )
        .unwrap()
    }

    fn sheared_cube() -> VPolytope {
        VPolytope::from_i64_points(2, &[&[2, 1], &[0, -1], &[0, 1], &[-2, -1]]).unwrap()
    }

    #[test]
    fn hypotheses_rejected_with_named_reason() {
        let t = VPolytope::from_i64_points(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let Err(Error::Hypothesis(msg)) = check_standing_hypotheses(&t) else {
            panic!("asymmetric triangle must fail the hypothesis check");
        };
        assert!(msg.contains("symmetric"));

        let big = cube(2).dilate(&rat(3, 1));
        let Err(Error::Hypothesis(msg)) = check_standing_hypotheses(&big) else {
            panic!("dilated cube has extra interior points");
        };
        assert!(msg.contains("interior"));

        let seg = VPolytope::from_i64_points(2, &[&[1, 0], &[-1, 0]]).unwrap();
        assert!(matches!(
            check_standing_hypotheses(&seg),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn count_bound_on_named_bodies() {
        let r = verify_3d_bound(&cube(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.count, 9);
        assert_eq!(r.bound, Int::from(9));

        let r = verify_3d_bound(&cross(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.count, 5);

        let r = verify_3d_bound(&hexagon()).unwrap();
        assert!(r.passed());
        assert_eq!(r.count, 7);

        let r = verify_3d_bound(&cube(3)).unwrap();
        assert!(r.passed());
        assert_eq!(r.count, 27);
    }

    #[test]
    fn vertex_bound_condition_and_tightness() {
        let r = verify_vertex_bound(&cross(2)).unwrap();
        assert!(r.condition_holds);
        assert_eq!(r.count, 5);
        assert!(r.passed());

        // the cube fails the convex-position condition: (1,0) lies in
        // conv{(1,1),(1,-1)}; sorted order makes (-1,0) the first witness
        let r = verify_vertex_bound(&cube(2)).unwrap();
        assert!(!r.condition_holds);
        assert_eq!(r.condition_witness, Some(iv(&[-1, 0])));
        assert!(r.passed());

        // hexagon attains the bound 2^3 - 1 = 7
        let r = verify_vertex_bound(&hexagon()).unwrap();
        assert!(r.condition_holds);
        assert_eq!(r.count, 7);
        assert_eq!(r.bound, Int::from(7));
        assert!(r.within_bound);
    }

    #[test]
    fn mod3_completion_examples() {
        let (z, w) = mod3_complete(&cube(2), &iv(&[1, 1]), &iv(&[1, 0])).unwrap();
        assert_eq!(z, iv(&[1, -1]));
        assert_eq!(w, iv(&[1, 0]));

        let (z, w) = mod3_complete(&cube(2), &iv(&[0, 0]), &iv(&[0, 0])).unwrap();
        assert_eq!(z, iv(&[0, 0]));
        assert_eq!(w, iv(&[0, 0]));

        let (z, w) = mod3_complete(&cube(2), &iv(&[1, 1]), &iv(&[-1, -1])).unwrap();
        assert_eq!(z, iv(&[0, 0]));
        assert_eq!(w, iv(&[0, 0]));
    }

    #[test]
    fn mod3_requires_full_count_and_membership() {
        assert!(matches!(
            mod3_table(&cross(2)),
            Err(Error::GammaNotBijective(_))
        ));
        assert!(matches!(
            mod3_complete(&cube(2), &iv(&[5, 5]), &iv(&[0, 0])),
            Err(Error::PointNotInSet(_))
        ));
    }

    #[test]
    fn mod3_algebra_on_the_square() {
        let table = mod3_table(&cube(2)).unwrap();
        let pts = table.points().points.clone();
        for x in &pts {
            for y in &pts {
                let (zxy, _) = table.complete(x, y).unwrap();
                let (zyx, _) = table.complete(y, x).unwrap();
                assert_eq!(zxy, zyx, "completion must be symmetric");
                let (back, _) = table.complete(x, &zxy).unwrap();
                assert_eq!(back, *y, "completion must be an involution in y");
            }
            let (zxx, wxx) = table.complete(x, x).unwrap();
            assert_eq!(zxx, *x);
            assert_eq!(wxx, *x);
        }
    }

    #[test]
    fn layering_of_the_square() {
        let r = facet_layering(&cube(2)).unwrap();
        assert!(r.passed());
        // canonical facet order picks the normal (-1, 0) first; its facet
        // is {-1} x [-1,1] with relative-interior point (-1, 0)
        assert_eq!(r.interior_point, iv(&[-1, 0]));
        assert_eq!(r.facet_layer.len(), 3);
        assert_eq!(r.middle_layer.len(), 3);
        assert_eq!(r.negated_layer.len(), 3);
        assert_eq!(r.face_witnesses.len(), 1);
        assert!(r.face_witnesses[0].dim >= 1);
    }

    #[test]
    fn layering_of_the_sheared_square_and_cube() {
        let r = facet_layering(&sheared_cube()).unwrap();
        assert!(r.passed(), "sheared instance must layer: {r:?}");

        let r = facet_layering(&cube(3)).unwrap();
        assert!(r.passed());
        assert_eq!(r.facet_layer.len(), 9);
        assert_eq!(r.face_witnesses.len(), 2);
    }

    #[test]
    fn layering_rejects_non_extremal_counts() {
        assert!(matches!(
            facet_layering(&cross(2)),
            Err(Error::GammaNotBijective(_))
        ));
    }

    #[test]
    fn cube_recognizer_on_named_bodies() {
        let Recognition::Accepted(w) = recognize_standard_cube(&cube(2)) else {
            panic!("the square is a standard cube");
        };
        assert_eq!(w.basis, IntMat::from_i64(&[&[0, 1], &[1, 0]]));

        let Recognition::Accepted(w) = recognize_standard_cube(&sheared_cube()) else {
            panic!("sheared square is a standard cube");
        };
        assert_eq!(w.basis, IntMat::from_i64(&[&[1, 0], &[1, 1]]));

        assert!(!recognize_standard_cube(&cross(2)).is_accepted());
        assert!(!recognize_standard_cube(&hexagon()).is_accepted());
        assert!(recognize_standard_cube(&cube(3)).is_accepted());
        assert!(recognize_standard_cube(&cube(4)).is_accepted());

        let shifted = cube(2).translate(&rv(&[1, 0]));
        assert!(!recognize_standard_cube(&shifted).is_accepted());
    }

    #[test]
    fn cross_recognizer_on_named_bodies() {
        let Recognition::Accepted(w) = recognize_cross_polytope(&cross(2)) else {
            panic!("the diamond is a cross-polytope");
        };
        assert_eq!(w.scale, rat_int(1));
        assert!(w.center.is_zero());
        assert_eq!(w.basis, IntMat::from_i64(&[&[0, 1], &[1, 0]]));

        // frozen from the defining construction: c=(0,0), lambda=2,
        // basis {(1,0),(1,1)}
        let p = VPolytope::from_i64_points(2, &[&[2, 0], &[-2, 0], &[2, 2], &[-2, -2]]).unwrap();
        let Recognition::Accepted(w) = recognize_cross_polytope(&p) else {
            panic!("conv{{±(2,0),±(2,2)}} is a regular cross-polytope");
        };
        assert_eq!(w.scale, rat_int(2));
        assert_eq!(w.basis, IntMat::from_i64(&[&[1, 0], &[1, 1]]));

        // determinant obstruction
        let q = VPolytope::from_i64_points(2, &[&[1, 0], &[-1, 0], &[1, 2], &[-1, -2]]).unwrap();
        let rej = recognize_cross_polytope(&q);
        assert!(!rej.is_accepted());
        assert!(rej.rejection_reason().unwrap().contains("unimodular"));

        // the square has 4 vertices pairing correctly but fails
        // unimodularity of the arm basis
        assert!(!recognize_cross_polytope(&cube(2)).is_accepted());
        assert!(recognize_cross_polytope(&cross(3)).is_accepted());

        // non-lattice center is allowed by the definition
        let shifted = cross(2).translate(&RatVec::from_frac(&[(1, 2), (0, 1)]));
        assert!(recognize_cross_polytope(&shifted).is_accepted());
    }

    #[test]
    fn packing_of_the_square_tiles() {
        let r = verify_packing(&cube(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.translate_count, 9);
        assert_eq!(r.volume_product, rat_int(36));
        assert_eq!(r.volume_bound, rat_int(36));
        assert!(r.tiles);
    }

    #[test]
    fn packing_of_cross_and_hexagon_is_strict() {
        let r = verify_packing(&cross(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.volume_product, rat_int(10));
        assert_eq!(r.volume_bound, rat_int(18));
        assert!(!r.tiles);

        let r = verify_packing(&hexagon()).unwrap();
        assert!(r.passed());
        assert_eq!(r.volume_product, rat_int(21));
        assert_eq!(r.volume_bound, rat_int(27));
        assert!(!r.tiles);
    }

    #[test]
    fn interior_intersection_agrees_with_dimension_method() {
        let (h, _) = cube(2).v_to_h().unwrap();
        let cases: Vec<RatVec> = vec![rv(&[1, 0]), rv(&[2, 0]), rv(&[2, 2]), rv(&[5, 0])];
        for t in cases {
            let ht = h.translate(&t);
            let by_lp = interiors_intersect(&h, &ht);
            let by_dim = matches!(intersection_dim(&h, &ht).unwrap(), Some(dim) if dim == 2);
            assert_eq!(by_lp, by_dim, "disagreement at translate {t}");
        }
    }

    #[test]
    fn equality_orchestration_on_square_and_cross() {
        let r = verify_mink_equality(&cube(2)).unwrap();
        assert!(r.passed());
        assert!(r.equality);
        assert!(r.cube.is_accepted());
        assert_eq!(r.mod3_total, Some(true));
        assert!(r.layering.is_some());

        let r = verify_mink_equality(&cross(2)).unwrap();
        assert!(r.passed());
        assert!(!r.equality);
        assert!(!r.cube.is_accepted());
        assert!(r.layering.is_none());
    }

    #[test]
    fn equality_orchestration_on_the_segment() {
        let seg = VPolytope::from_i64_points(1, &[&[-1], &[1]]).unwrap();
        let r = verify_mink_equality(&seg).unwrap();
        assert!(r.passed());
        assert!(r.equality);
        assert!(r.cube.is_accepted());
    }
}
