//! Seeded instance generation. Every family is a pure function of
//! (seed, dim, bound, count), bit-reproducible across runs and machines.

use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::origin_is_only_interior_point;
use crate::linalg::{Int, IntMat, IntVec, Rat, RatVec};
use crate::polytope::{Instance, VPolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// The standard cube [-1,1]^d (one instance).
    Cube,
    /// The standard cross-polytope conv{±e_i} (one instance).
    Cross,
    /// Random origin-symmetric lattice polytopes, full-dimensional with
    /// the origin as unique interior lattice point.
    RandomSymmetric,
    /// Random full-dimensional rational polytopes, no symmetry imposed.
    RandomGeneral,
    /// Random unimodular images (with integer translations) of a given
    /// base polytope.
    UnimodularOrbit,
    /// Every origin-symmetric lattice polytope with vertices in the
    /// ±bound box, up to vertex-set identity. Dimension 2, bound <= 2.
    ExhaustiveSymmetric,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(Family::Cube),
            "cross" => Ok(Family::Cross),
            "random-symmetric" => Ok(Family::RandomSymmetric),
            "random-general" => Ok(Family::RandomGeneral),
            "unimodular-orbit" => Ok(Family::UnimodularOrbit),
            "exhaustive-symmetric" => Ok(Family::ExhaustiveSymmetric),
            other => Err(Error::Parse(format!(
                "unknown family {other:?}; known: cube, cross, random-symmetric, \
                 random-general, unimodular-orbit, exhaustive-symmetric"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub seed: u64,
    pub dim: usize,
    pub family: Family,
    /// Coordinate box radius for sampled points.
    pub bound: i64,
    pub count: usize,
}

pub fn standard_cube(d: usize) -> VPolytope {
    let mut pts = Vec::with_capacity(1 << d);
    for mask in 0..(1u32 << d) {
        let coords: Vec<i64> = (0..d)
            .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
            .collect();
        pts.push(RatVec::from_i64(&coords));
    }
    VPolytope::new(d, &pts).expect("cube vertices span a polytope")
}

pub fn standard_cross(d: usize) -> VPolytope {
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1i64, -1] {
            let mut v = vec![0i64; d];
            v[i] = s;
            pts.push(RatVec::from_i64(&v));
        }
    }
    VPolytope::new(d, &pts).expect("cross vertices span a polytope")
}

/// Random unimodular matrix: a product of `steps` elementary operations
/// (shears with coefficient in ±1..=2, row swaps, row negations) applied
/// to the identity. Determinant ±1 by construction.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize, steps: usize) -> IntMat {
    let mut rows: Vec<IntVec> = (0..d).map(|i| IntVec::unit(d, i)).collect();
    if d == 1 {
        if rng.gen_bool(0.5) {
            rows[0] = rows[0].neg();
        }
        return IntMat::from_rows(d, rows);
    }
    for _ in 0..steps {
        match rng.gen_range(0..6) {
            0 | 1 | 2 | 3 => {
                let i = rng.gen_range(0..d);
                let mut j = rng.gen_range(0..d - 1);
                if j >= i {
                    j += 1;
                }
                let c = Int::from([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
                rows[i] = rows[i].add(&rows[j].scale(&c));
            }
            4 => {
                let i = rng.gen_range(0..d);
                let mut j = rng.gen_range(0..d - 1);
                if j >= i {
                    j += 1;
                }
                rows.swap(i, j);
            }
            _ => {
                let i = rng.gen_range(0..d);
                rows[i] = rows[i].neg();
            }
        }
    }
    IntMat::from_rows(d, rows)
}

fn random_symmetric_instance(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> Result<VPolytope> {
    for _ in 0..500 {
        let n_pairs = rng.gen_range(d..=2 * d + 1);
        let mut pts: Vec<RatVec> = Vec::with_capacity(2 * n_pairs);
        for _ in 0..n_pairs {
            let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
            if coords.iter().all(|&c| c == 0) {
                continue;
            }
            let v = RatVec::from_i64(&coords);
            pts.push(v.neg());
            pts.push(v);
        }
        if pts.len() < 2 * d {
            continue;
        }
        let Ok(p) = VPolytope::new(d, &pts) else {
            continue;
        };
        if !p.is_full_dim() {
            continue;
        }
        if origin_is_only_interior_point(&p)? {
            return Ok(p);
        }
    }
    Err(Error::Unsupported(format!(
        "no admissible symmetric instance found in 500 draws (dim {d}, bound {bound})"
    )))
}

fn random_general_instance(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> Result<VPolytope> {
    for _ in 0..500 {
        let n_pts = rng.gen_range(d + 1..=2 * d + 3);
        let mut pts: Vec<RatVec> = Vec::with_capacity(n_pts);
        for _ in 0..n_pts {
            let coords: Vec<Rat> = (0..d)
                .map(|_| {
                    let q = rng.gen_range(1..=3i64);
                    let p = rng.gen_range(-bound * q..=bound * q);
                    Rat::new(Int::from(p), Int::from(q))
                })
                .collect();
            pts.push(RatVec::new(coords));
        }
        let Ok(p) = VPolytope::new(d, &pts) else {
            continue;
        };
        if p.is_full_dim() {
            return Ok(p);
        }
    }
    Err(Error::Unsupported(format!(
        "no full-dimensional instance found in 500 draws (dim {d}, bound {bound})"
    )))
}

fn unimodular_image(rng: &mut ChaCha8Rng, base: &VPolytope, bound: i64) -> Result<VPolytope> {
    let d = base.ambient_dim();
    let t = random_unimodular(rng, d, 3 * d);
    let shift: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
    let img = base.linear_image(&t);
    Ok(img.translate(&RatVec::from_i64(&shift)))
}

/// All origin-symmetric lattice polytopes with vertex coordinates in
/// [-bound, bound]^2, one per distinct vertex set, full-dimensional with
/// unique interior lattice point the origin. Sorted canonically.
fn exhaustive_symmetric_2d(bound: i64) -> Result<Vec<VPolytope>> {
    if bound < 1 || bound > 2 {
        return Err(Error::Unsupported(format!(
            "exhaustive symmetric family is tabulated for bound 1 or 2, got {bound}"
        )));
    }
    // one representative per antipodal pair of nonzero lattice points
    let mut pairs: Vec<IntVec> = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let v = IntVec::from_i64(&[x, y]);
            if v.is_zero() {
                continue;
            }
            if v == v.sign_canonical() {
                pairs.push(v);
            }
        }
    }
    let n = pairs.len();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        if (mask.count_ones() as usize) < 2 {
            continue;
        }
        let mut pts: Vec<RatVec> = Vec::new();
        for (i, v) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                pts.push(v.to_rat());
                pts.push(v.neg().to_rat());
            }
        }
        let Ok(p) = VPolytope::new(2, &pts) else {
            continue;
        };
        if !p.is_full_dim() {
            continue;
        }
        if !seen.insert(p.vertices().to_vec()) {
            continue;
        }
        if origin_is_only_interior_point(&p)? {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    Ok(out)
}

/// Generate a corpus. `base` is consumed by the unimodular-orbit family
/// and must be a bounded polytope instance.
pub fn generate(spec: &CorpusSpec, base: Option<&Instance>) -> Result<Vec<Instance>> {
    if spec.dim == 0 {
        return Err(Error::Hypothesis(
            "corpus dimension must be positive".into(),
        ));
    }
    if spec.bound < 1 {
        return Err(Error::Hypothesis("corpus bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Cube => Ok(vec![Instance::Polytope(standard_cube(spec.dim))]),
        Family::Cross => Ok(vec![Instance::Polytope(standard_cross(spec.dim))]),
        Family::RandomSymmetric => (0..spec.count)
            .map(|_| {
                random_symmetric_instance(&mut rng, spec.dim, spec.bound).map(Instance::Polytope)
            })
            .collect(),
        Family::RandomGeneral => (0..spec.count)
            .map(|_| {
                random_general_instance(&mut rng, spec.dim, spec.bound).map(Instance::Polytope)
            })
            .collect(),
        Family::UnimodularOrbit => {
            let Some(Instance::Polytope(p)) = base else {
                return Err(Error::Hypothesis(
                    "unimodular-orbit needs a bounded polytope base instance".into(),
                ));
            };
            (0..spec.count)
                .map(|_| unimodular_image(&mut rng, p, spec.bound).map(Instance::Polytope))
                .collect()
        }
        Family::ExhaustiveSymmetric => {
            if spec.dim != 2 {
                return Err(Error::Unsupported(
                    "exhaustive symmetric family is tabulated in dimension 2".into(),
                ));
            }
            Ok(exhaustive_symmetric_2d(spec.bound)?
                .into_iter()
                .map(Instance::Polytope)
                .collect())
        }
    }
}
