//! Brute-force reference for widths and width directions: scan every
//! nonzero integer vector in a max-norm box and take exact minima over
//! vertex evaluations. Shares nothing with the certified engine beyond
//! the meaning of "evaluate a functional on a vertex" — no facets, no
//! inscribed witness, no shell pruning.

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVec, Rat, RatVec};
use crate::polytope::VPolytope;

/// Every vector of the box [-radius, radius]^d except zero, by odometer.
fn for_each_box_vector(d: usize, radius: i64, f: &mut impl FnMut(&[i64])) {
    let mut counter = vec![-radius; d];
    'scan: loop {
        if counter.iter().any(|&c| c != 0) {
            f(&counter);
        }
        let mut i = 0;
        loop {
            counter[i] += 1;
            if counter[i] <= radius {
                break;
            }
            counter[i] = -radius;
            i += 1;
            if i == d {
                break 'scan;
            }
        }
    }
}

fn gcd_is_one(coords: &[i64]) -> bool {
    coords.iter().fold(0i64, |g, &c| num_integer::gcd(g, c)) == 1
}

/// Minimum of sup - inf of v·x over all integer v with 0 < max-norm <=
/// radius, together with every *primitive* minimizer (both signs),
/// sorted. The result is exact for the scanned box; it certifies the
/// true lattice width only if the caller supplies a radius at least as
/// large as some certified enumeration bound.
pub fn oracle_directions(p: &VPolytope, radius: i64) -> Result<(Rat, Vec<IntVec>)> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    if radius < 1 {
        return Err(Error::Hypothesis(format!(
            "oracle radius must be positive, got {radius}"
        )));
    }
    let d = p.ambient_dim();

    // clear all vertex denominators at once; over the shared denominator
    // every evaluation is an integer and sums stay far below i128 range
    // as long as the scaled coordinates fit i64 and the radius is sane
    let mut den = Int::from(1);
    for x in p.vertices() {
        for c in x.entries() {
            den = den.lcm(c.denom());
        }
    }
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(p.vertices().len());
    let mut fits = radius <= 1 << 20;
    'build: for x in p.vertices() {
        let mut row = Vec::with_capacity(d);
        for c in x.entries() {
            let scaled: Int = c.numer() * &den / c.denom();
            match scaled.to_i64() {
                Some(v) => row.push(v),
                None => {
                    fits = false;
                    break 'build;
                }
            }
        }
        rows.push(row);
    }

    if fits {
        let mut best: Option<i128> = None;
        let mut argmin: Vec<IntVec> = Vec::new();
        for_each_box_vector(d, radius, &mut |coords| {
            let mut lo = i128::MAX;
            let mut hi = i128::MIN;
            for row in &rows {
                let mut s = 0i128;
                for (a, b) in row.iter().zip(coords) {
                    s += (*a as i128) * (*b as i128);
                }
                if s < lo {
                    lo = s;
                }
                if s > hi {
                    hi = s;
                }
            }
            let w = hi - lo;
            let better = best.map_or(true, |b| w < b);
            if better {
                best = Some(w);
                argmin.clear();
                if gcd_is_one(coords) {
                    argmin.push(IntVec::from_i64(coords));
                }
            } else if best == Some(w) && gcd_is_one(coords) {
                argmin.push(IntVec::from_i64(coords));
            }
        });
        argmin.sort();
        let num = Int::from(best.expect("box contains nonzero vectors"));
        return Ok((Rat::new(num, den), argmin));
    }

    let verts: Vec<&RatVec> = p.vertices().iter().collect();
    let mut best: Option<Rat> = None;
    let mut argmin: Vec<IntVec> = Vec::new();
    for_each_box_vector(d, radius, &mut |coords| {
        let v = IntVec::from_i64(coords);
        let mut lo = v.dot_rat(verts[0]);
        let mut hi = lo.clone();
        for vert in &verts[1..] {
            let val = v.dot_rat(vert);
            if val < lo {
                lo = val;
            } else if val > hi {
                hi = val;
            }
        }
        let w = hi - lo;
        let better = best.as_ref().map_or(true, |b| w < *b);
        if better {
            best = Some(w);
            argmin.clear();
            if v.is_primitive() {
                argmin.push(v);
            }
        } else if best.as_ref() == Some(&w) && v.is_primitive() {
            argmin.push(v);
        }
    });
    argmin.sort();
    Ok((best.expect("box contains nonzero vectors"), argmin))
}
