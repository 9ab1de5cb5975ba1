//! Structural properties, runnable in isolation:
//! `cargo test --test properties`.
//!
//! Covers directional-width sublinearity and homogeneity, the mod-3
//! completion algebra, primitivity and sign-closure of reported
//! direction sets, the volume bound on admissible symmetric bodies, and
//! the cube/cross duality of direction hulls.

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use latwidth::corpus::{self, standard_cross, standard_cube, CorpusSpec, Family};
use latwidth::lattice::enumerate_lattice_points;
use latwidth::linalg::{rat_int, Int, IntVec, Rat};
use latwidth::polytope::volume;
use latwidth::verify::{mod3_table, recognize_cross_polytope, recognize_standard_cube};
use latwidth::width::{dual_body, lattice_width, width_in_direction};
use latwidth::{Instance, VPolytope, WidthCertificate};

fn small_body(seed: u64, dim: usize) -> VPolytope {
    let spec = CorpusSpec {
        seed,
        dim,
        family: Family::RandomGeneral,
        bound: 3,
        count: 1,
    };
    let instances = corpus::generate(&spec, None).expect("family generates");
    let Instance::Polytope(p) = instances.into_iter().next().expect("one instance") else {
        unreachable!("random-general yields polytopes")
    };
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn directional_width_is_sublinear_and_homogeneous(
        seed in 0u64..1000,
        u in proptest::collection::vec(-5i64..=5, 2),
        v in proptest::collection::vec(-5i64..=5, 2),
        k in -4i64..=4,
    ) {
        let p = small_body(seed, 2);
        let iu = IntVec::from_i64(&u);
        let iv = IntVec::from_i64(&v);
        let sum = iu.add(&iv);
        prop_assert!(
            width_in_direction(&p, &sum)
                <= width_in_direction(&p, &iu) + width_in_direction(&p, &iv)
        );
        let scaled = iu.scale(&Int::from(k));
        let expect = Rat::from_integer(Int::from(k.abs())) * width_in_direction(&p, &iu);
        prop_assert_eq!(width_in_direction(&p, &scaled), expect);
    }

    #[test]
    fn support_is_sublinear(
        seed in 0u64..1000,
        u in proptest::collection::vec(-5i64..=5, 3),
        v in proptest::collection::vec(-5i64..=5, 3),
    ) {
        let p = small_body(seed, 3);
        let iu = IntVec::from_i64(&u);
        let iv = IntVec::from_i64(&v);
        prop_assert!(p.support(&iu.add(&iv)) <= p.support(&iu) + p.support(&iv));
    }
}

#[test]
fn mod3_completion_algebra() {
    let sheared = VPolytope::from_i64_points(2, &[&[2, 1], &[0, -1], &[0, 1], &[-2, -1]])
        .expect("sheared square");
    for p in [standard_cube(2), standard_cube(3), sheared] {
        let table = mod3_table(&p).expect("3^d instance");
        let pts = table.points().points.clone();
        for x in &pts {
            let (zxx, wxx) = table.complete(x, x).expect("total");
            assert_eq!(&zxx, x, "z(x,x) = x");
            assert_eq!(&wxx, x, "w(x,x) = x");
            for y in &pts {
                let (zxy, w) = table.complete(x, y).expect("total");
                let (zyx, _) = table.complete(y, x).expect("total");
                assert_eq!(zxy, zyx, "completion is symmetric");
                let (back, _) = table.complete(x, &zxy).expect("total");
                assert_eq!(&back, y, "completion is an involution in y");
                // the average is the completion's own fixed combination
                let sum = x.add(y).add(&zxy);
                assert_eq!(sum, w.scale(&Int::from(3)));
            }
        }
    }
}

#[test]
fn reported_directions_are_primitive_and_sign_closed() {
    let mut instances: Vec<Instance> = Vec::new();
    for dim in [2usize, 3] {
        for family in [Family::RandomSymmetric, Family::RandomGeneral] {
            let spec = CorpusSpec {
                seed: 42 + dim as u64,
                dim,
                family,
                bound: 2,
                count: 12,
            };
            instances.extend(corpus::generate(&spec, None).expect("generates"));
        }
    }
    let mut positive_seen = 0usize;
    for inst in &instances {
        let cert = lattice_width(inst).expect("bounded instances have certificates");
        let WidthCertificate::Positive(c) = cert else {
            continue;
        };
        positive_seen += 1;
        for v in &c.directions {
            assert!(v.is_primitive(), "non-primitive reported direction {v}");
            assert!(
                c.directions.contains(&v.neg()),
                "direction set must be closed under negation: missing -{v}"
            );
        }
        let mut sorted = c.directions.clone();
        sorted.sort();
        assert_eq!(sorted, c.directions, "directions must be sorted");
        assert_eq!(sorted.len() % 2, 0, "directions pair up by sign");
    }
    assert!(
        positive_seen >= 40,
        "corpus must exercise the positive path"
    );
}

#[test]
fn volume_bound_on_admissible_symmetric_bodies() {
    // Minkowski: a symmetric convex body whose only interior lattice
    // point is the origin has volume at most 2^d
    for dim in [2usize, 3] {
        let spec = CorpusSpec {
            seed: 7,
            dim,
            family: Family::RandomSymmetric,
            bound: 2,
            count: 25,
        };
        let cap = Rat::from_integer(num_traits::pow(Int::from(2), dim));
        for inst in corpus::generate(&spec, None).expect("generates") {
            let Instance::Polytope(p) = inst else {
                unreachable!()
            };
            let vol = volume(&p).expect("full-dimensional");
            assert!(vol.is_positive());
            assert!(vol <= cap, "volume {vol} exceeds 2^{dim}");
        }
    }
    // equality at the cube
    assert_eq!(volume(&standard_cube(3)).unwrap(), rat_int(8));
}

#[test]
fn dilation_scales_volume_by_the_cube_of_the_factor() {
    for p in [standard_cube(2), standard_cross(3), small_body(5, 2)] {
        let d = p.ambient_dim();
        let tripled = p.dilate(&rat_int(3));
        assert_eq!(
            volume(&tripled).unwrap(),
            Rat::from_integer(num_traits::pow(Int::from(3), d)) * volume(&p).unwrap()
        );
    }
}

#[test]
fn hull_and_inequality_views_agree() {
    for p in [standard_cube(2), standard_cross(3), small_body(17, 3)] {
        let (h, _) = p.v_to_h().expect("full-dimensional");
        let back = h.to_vpolytope().expect("bounded");
        assert_eq!(back, p);
    }
}

#[test]
fn direction_hulls_swap_cube_and_cross() {
    // the square's width directions span the diamond and vice versa
    let cases = [
        (standard_cube(2), true, false),
        (standard_cross(2), false, true),
        (standard_cube(3), true, false),
        (standard_cross(3), false, true),
    ];
    for (p, expect_cross_hull, expect_cube_hull) in cases {
        let cert = lattice_width(&Instance::Polytope(p)).expect("bounded");
        let rep = dual_body(&cert).expect("positive width");
        assert!(rep.passed());
        assert_eq!(
            recognize_cross_polytope(&rep.hull).is_accepted(),
            expect_cross_hull,
            "cross recognition of the direction hull"
        );
        assert_eq!(
            recognize_standard_cube(&rep.hull).is_accepted(),
            expect_cube_hull,
            "cube recognition of the direction hull"
        );
    }
}

#[test]
fn zero_width_directions_annihilate_the_body() {
    let seg =
        Instance::Polytope(VPolytope::from_i64_points(2, &[&[0, 0], &[2, 4]]).expect("segment"));
    let cert = lattice_width(&seg).expect("classifies");
    let WidthCertificate::Zero(z) = cert else {
        panic!("lower-dimensional instance must classify as zero width")
    };
    let Instance::Polytope(p) = &seg else {
        unreachable!()
    };
    for row in z.direction_lattice.rows() {
        assert!(!row.is_zero());
        assert!(width_in_direction(p, row).is_zero());
    }
}

#[test]
fn interior_lattice_points_of_dilates_grow_consistently() {
    // sanity anchor for the enumeration engine used across the suites
    let p = standard_cross(2);
    let pts1 = enumerate_lattice_points(&p).unwrap();
    let pts3 = enumerate_lattice_points(&p.dilate(&rat_int(3))).unwrap();
    assert_eq!(pts1.points.len(), 5);
    assert_eq!(pts3.points.len(), 25);
}
