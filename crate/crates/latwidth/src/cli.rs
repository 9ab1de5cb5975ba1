//! Command layer: every operation the binary exposes, mapped onto a
//! uniform report document with a pass/fail/error verdict. The binary
//! itself only parses arguments and forwards here.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::corpus::{self, CorpusSpec};
use crate::error::{Error, Result};
use crate::io::{self, int_to_value, ivec_to_value, rat_to_value, rvec_to_value, FORMAT_VERSION};
use crate::linalg::{Int, IntVec};
use crate::oracle::oracle_directions;
use crate::polytope::{Instance, VPolytope};
use crate::verify::{
    facet_layering, mod3_complete, recognize_cross_polytope, recognize_standard_cube,
    verify_3d_bound, verify_mink_equality, verify_packing, verify_vertex_bound, CrossWitness,
    CubeWitness, LayeringReport, Recognition,
};
use crate::width::{
    check_direction_bound, dual_body, lattice_width, PositiveWidthCertificate, WidthCertificate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Debug)]
pub enum Request {
    Width(Instance),
    Directions(Instance),
    DualBody(Instance),
    CheckMain(Instance),
    Verify3d(Instance),
    VertexBound(Instance),
    Packing(Instance),
    Equality(Instance),
    RecognizeCube(Instance),
    RecognizeCross(Instance),
    Layering(Instance),
    Mod3 {
        instance: Instance,
        x: IntVec,
        y: IntVec,
    },
    Oracle {
        instance: Instance,
        radius: i64,
    },
}

impl Request {
    pub fn command_name(&self) -> &'static str {
        match self {
            Request::Width(_) => "width",
            Request::Directions(_) => "directions",
            Request::DualBody(_) => "dual-body",
            Request::CheckMain(_) => "check-main",
            Request::Verify3d(_) => "verify-3d",
            Request::VertexBound(_) => "verify-vertex-bound",
            Request::Packing(_) => "verify-packing",
            Request::Equality(_) => "verify-equality",
            Request::RecognizeCube(_) => "recognize-cube",
            Request::RecognizeCross(_) => "recognize-cross",
            Request::Layering(_) => "layering",
            Request::Mod3 { .. } => "mod3",
            Request::Oracle { .. } => "oracle",
        }
    }

    fn instance(&self) -> &Instance {
        match self {
            Request::Width(i)
            | Request::Directions(i)
            | Request::DualBody(i)
            | Request::CheckMain(i)
            | Request::Verify3d(i)
            | Request::VertexBound(i)
            | Request::Packing(i)
            | Request::Equality(i)
            | Request::RecognizeCube(i)
            | Request::RecognizeCross(i)
            | Request::Layering(i) => i,
            Request::Mod3 { instance, .. } | Request::Oracle { instance, .. } => instance,
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub instance_digest: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub error: Option<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "format_version": FORMAT_VERSION,
            "command": self.command,
            "instance_digest": self.instance_digest,
            "verdict": self.verdict.as_str(),
            "witness": self.witness,
            "error": self.error,
            "timing_ms": self.timing_ms as u64,
        })
    }
}

/// Bounded-polytope view of an instance; verifiers for the lattice-point
/// theorems only make sense on bounded bodies.
fn as_polytope(inst: &Instance) -> Result<VPolytope> {
    match inst {
        Instance::Polytope(p) => Ok(p.clone()),
        Instance::Polyhedron(h) => h.to_vpolytope(),
    }
}

fn positive_certificate_value(c: &PositiveWidthCertificate) -> Value {
    json!({
        "classification": "FULL_DIM_POSITIVE",
        "width": rat_to_value(&c.width),
        "directions": Value::Array(c.directions.iter().map(ivec_to_value).collect()),
        "direction_count": c.directions.len(),
        "enumeration_radius": int_to_value(&c.enumeration_radius),
        "quotient_rank": c.quotient_rank,
        "witness_simplex": {
            "base": rvec_to_value(&c.witness.base_vertex),
            "edges": Value::Array(c.witness.edges.iter().map(rvec_to_value).collect()),
            "bound_norm": rat_to_value(&c.witness.bound_norm),
        },
    })
}

fn certificate_value(cert: &WidthCertificate) -> Value {
    match cert {
        WidthCertificate::Positive(c) => positive_certificate_value(c),
        WidthCertificate::Zero(z) => json!({
            "classification": cert.classification(),
            "width": "0",
            "direction_lattice": Value::Array(
                z.direction_lattice.rows().iter().map(ivec_to_value).collect()
            ),
        }),
        WidthCertificate::Infinite => json!({
            "classification": cert.classification(),
        }),
    }
}

fn cube_recognition_value(rec: &Recognition<CubeWitness>) -> Value {
    match rec {
        Recognition::Accepted(w) => json!({
            "accepted": true,
            "basis": Value::Array(w.basis.rows().iter().map(ivec_to_value).collect()),
        }),
        Recognition::Rejected(reason) => json!({
            "accepted": false,
            "reason": reason,
        }),
    }
}

fn cross_recognition_value(rec: &Recognition<CrossWitness>) -> Value {
    match rec {
        Recognition::Accepted(w) => json!({
            "accepted": true,
            "center": rvec_to_value(&w.center),
            "scale": rat_to_value(&w.scale),
            "basis": Value::Array(w.basis.rows().iter().map(ivec_to_value).collect()),
        }),
        Recognition::Rejected(reason) => json!({
            "accepted": false,
            "reason": reason,
        }),
    }
}

fn layering_value(r: &LayeringReport) -> Value {
    json!({
        "facet_normal": ivec_to_value(&r.facet_normal),
        "facet_height": rat_to_value(&r.facet_height),
        "u_f": rvec_to_value(&r.u_f),
        "interior_point": ivec_to_value(&r.interior_point),
        "layer_sizes": [r.facet_layer.len(), r.middle_layer.len(), r.negated_layer.len()],
        "partition_ok": r.partition_ok,
        "bijection_ok": r.bijection_ok,
        "vertex_claim_ok": r.vertex_claim_ok,
        "prism_ok": r.prism_ok,
        "faces_ok": r.faces_ok,
        "face_witnesses": Value::Array(
            r.face_witnesses
                .iter()
                .map(|f| {
                    json!({
                        "dim": f.dim,
                        "vertex_indices": f.vertex_indices,
                        "point": ivec_to_value(&f.point),
                    })
                })
                .collect()
        ),
    })
}

/// Run one request to a (verdict, witness) pair. `Err` values are mapped
/// to verdicts by `execute`.
fn run(req: &Request) -> Result<(Verdict, Value)> {
    match req {
        Request::Width(inst) => {
            let cert = lattice_width(inst)?;
            Ok((Verdict::Pass, certificate_value(&cert)))
        }
        Request::Directions(inst) => {
            let cert = lattice_width(inst)?;
            Ok((Verdict::Pass, certificate_value(&cert)))
        }
        Request::DualBody(inst) => {
            let cert = lattice_width(inst)?;
            let rep = dual_body(&cert)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((
                verdict,
                json!({
                    "hull_vertices": Value::Array(
                        rep.hull.vertices().iter().map(rvec_to_value).collect()
                    ),
                    "symmetric": rep.symmetric,
                    "origin_only_interior": rep.origin_only_interior,
                    "boundary_equals_directions": rep.boundary_equals_directions,
                    "boundary_count": rep.boundary_points.len(),
                }),
            ))
        }
        Request::CheckMain(inst) => {
            let rep = check_direction_bound(inst)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((
                verdict,
                json!({
                    "certificate": positive_certificate_value(&rep.certificate),
                    "direction_count": rep.direction_count,
                    "bound": int_to_value(&rep.bound),
                    "within_bound": rep.within_bound,
                    "equality": rep.equality,
                    "cross": cross_recognition_value(&rep.cross),
                    "consistent": rep.consistent,
                }),
            ))
        }
        Request::Verify3d(inst) => {
            let rep = verify_3d_bound(&as_polytope(inst)?)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((
                verdict,
                json!({
                    "count": rep.count,
                    "bound": int_to_value(&rep.bound),
                    "within_bound": rep.within_bound,
                    "mod3_injective": rep.gamma_injective,
                }),
            ))
        }
        Request::VertexBound(inst) => {
            let rep = verify_vertex_bound(&as_polytope(inst)?)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((
                verdict,
                json!({
                    "condition_holds": rep.condition_holds,
                    "condition_witness": rep.condition_witness.as_ref().map(ivec_to_value),
                    "count": rep.count,
                    "bound": int_to_value(&rep.bound),
                    "within_bound": rep.within_bound,
                }),
            ))
        }
        Request::Packing(inst) => {
            let rep = verify_packing(&as_polytope(inst)?)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((
                verdict,
                json!({
                    "translate_count": rep.translate_count,
                    "contained_ok": rep.contained_ok,
                    "disjoint_ok": rep.disjoint_ok,
                    "overlap_witness": rep
                        .overlap_witness
                        .as_ref()
                        .map(|(a, b)| json!([ivec_to_value(a), ivec_to_value(b)])),
                    "volume_product": rat_to_value(&rep.volume_product),
                    "volume_bound": rat_to_value(&rep.volume_bound),
                    "volume_ok": rep.volume_ok,
                    "tiles": rep.tiles,
                }),
            ))
        }
        Request::Equality(inst) => {
            let rep = verify_mink_equality(&as_polytope(inst)?)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((
                verdict,
                json!({
                    "count": rep.three_power.count,
                    "bound": int_to_value(&rep.three_power.bound),
                    "within_bound": rep.three_power.within_bound,
                    "mod3_injective": rep.three_power.gamma_injective,
                    "equality": rep.equality,
                    "cube": cube_recognition_value(&rep.cube),
                    "layering_passed": rep.layering.as_ref().map(|l| l.passed()),
                    "mod3_total": rep.mod3_total,
                    "consistent": rep.consistent,
                }),
            ))
        }
        Request::RecognizeCube(inst) => {
            let rec = recognize_standard_cube(&as_polytope(inst)?);
            let verdict = if rec.is_accepted() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((verdict, cube_recognition_value(&rec)))
        }
        Request::RecognizeCross(inst) => {
            let rec = recognize_cross_polytope(&as_polytope(inst)?);
            let verdict = if rec.is_accepted() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((verdict, cross_recognition_value(&rec)))
        }
        Request::Layering(inst) => {
            let rep = facet_layering(&as_polytope(inst)?)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            Ok((verdict, layering_value(&rep)))
        }
        Request::Mod3 { instance, x, y } => {
            let (z, w) = mod3_complete(&as_polytope(instance)?, x, y)?;
            Ok((
                Verdict::Pass,
                json!({
                    "x": ivec_to_value(x),
                    "y": ivec_to_value(y),
                    "z": ivec_to_value(&z),
                    "w": ivec_to_value(&w),
                }),
            ))
        }
        Request::Oracle { instance, radius } => {
            let (w, dirs) = oracle_directions(&as_polytope(instance)?, *radius)?;
            Ok((
                Verdict::Pass,
                json!({
                    "radius": radius,
                    "width": rat_to_value(&w),
                    "directions": Value::Array(dirs.iter().map(ivec_to_value).collect()),
                    "direction_count": dirs.len(),
                }),
            ))
        }
    }
}

pub fn execute(req: &Request) -> Report {
    let start = Instant::now();
    let digest = io::instance_digest(req.instance());
    let (verdict, witness, error) = match run(req) {
        Ok((v, w)) => (v, w, None),
        Err(Error::Violation(msg)) => (Verdict::Fail, Value::Null, Some(msg)),
        Err(e) => (Verdict::Error, Value::Null, Some(e.to_string())),
    };
    Report {
        command: req.command_name(),
        instance_digest: digest,
        verdict,
        witness,
        error,
        timing_ms: start.elapsed().as_millis(),
    }
}

/// Parse "1,0,-2" into an integer vector of the expected length.
pub fn parse_int_csv(s: &str, dim: usize) -> Result<IntVec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != dim {
        return Err(Error::Parse(format!(
            "expected {dim} comma-separated integers, got {}",
            parts.len()
        )));
    }
    let entries = parts
        .iter()
        .map(|p| {
            p.parse::<i64>()
                .map(Int::from)
                .map_err(|e| Error::Parse(format!("bad integer {p:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntVec::new(entries))
}

/// Generate a corpus and write one instance file per member into
/// `out_dir`. Returns the written paths in order.
pub fn generate_files(
    spec: &CorpusSpec,
    base: Option<&Instance>,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    let family_slug = match spec.family {
        corpus::Family::Cube => "cube",
        corpus::Family::Cross => "cross",
        corpus::Family::RandomSymmetric => "random-symmetric",
        corpus::Family::RandomGeneral => "random-general",
        corpus::Family::UnimodularOrbit => "unimodular-orbit",
        corpus::Family::ExhaustiveSymmetric => "exhaustive-symmetric",
    };
    let instances = corpus::generate(spec, base)?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::Parse(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut paths = Vec::with_capacity(instances.len());
    for (i, inst) in instances.iter().enumerate() {
        let name = format!("{family_slug}-{}d-s{}-{i:04}.json", spec.dim, spec.seed);
        let path = out_dir.join(name);
        std::fs::write(&path, io::serialize_instance(inst))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
        paths.push(path);
    }
    Ok(paths)
}

/// Decorative 2D sketch of an instance and its width directions; all
/// geometry below is presentation-only scaling of exact data.
pub fn svg_drawing(p: &VPolytope, directions: &[IntVec]) -> Result<String> {
    if p.ambient_dim() != 2 {
        return Err(Error::Unsupported(
            "drawings are available in dimension 2 only".to_string(),
        ));
    }
    let bbox = p.bounding_box();
    let to_f = |r: &crate::linalg::Rat| -> f64 {
        r.numer().to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0)
    };
    let (x0, x1) = (to_f(&bbox[0].0) - 1.0, to_f(&bbox[0].1) + 1.0);
    let (y0, y1) = (to_f(&bbox[1].0) - 1.0, to_f(&bbox[1].1) + 1.0);
    let side = 480.0;
    let scale = side / (x1 - x0).max(y1 - y0);
    let px = |x: f64, y: f64| -> (f64, f64) { ((x - x0) * scale, (y1 - y) * scale) };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" \
         viewBox=\"0 0 {0} {0}\">\n<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
        side as i64
    ));
    // lattice dots
    let mut gx = x0.ceil();
    while gx <= x1 {
        let mut gy = y0.ceil();
        while gy <= y1 {
            let (cx, cy) = px(gx, gy);
            svg.push_str(&format!(
                "<circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"2\" fill=\"#bbb\"/>\n"
            ));
            gy += 1.0;
        }
        gx += 1.0;
    }
    // the body: vertices in boundary order (angular sort about the centroid)
    let c = p.vertex_centroid();
    let (cfx, cfy) = (to_f(&c.entries()[0]), to_f(&c.entries()[1]));
    let mut ordered: Vec<(f64, f64, f64)> = p
        .vertices()
        .iter()
        .map(|v| {
            let (vx, vy) = (to_f(&v.entries()[0]), to_f(&v.entries()[1]));
            ((vy - cfy).atan2(vx - cfx), vx, vy)
        })
        .collect();
    ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
    let pts: Vec<String> = ordered
        .iter()
        .map(|(_, vx, vy)| {
            let (sx, sy) = px(*vx, *vy);
            format!("{sx:.1},{sy:.1}")
        })
        .collect();
    svg.push_str(&format!(
        "<polygon points=\"{}\" fill=\"#9ecae1\" fill-opacity=\"0.55\" \
         stroke=\"#3182bd\" stroke-width=\"2\"/>\n",
        pts.join(" ")
    ));
    // width directions drawn as arrows from the centroid
    for v in directions {
        let dx = v[0].to_f64().unwrap_or(0.0);
        let dy = v[1].to_f64().unwrap_or(0.0);
        let norm = (dx * dx + dy * dy).sqrt().max(1.0);
        let (tipx, tipy) = (cfx + dx / norm * 1.2, cfy + dy / norm * 1.2);
        let (ax, ay) = px(cfx, cfy);
        let (bx, by) = px(tipx, tipy);
        svg.push_str(&format!(
            "<line x1=\"{ax:.1}\" y1=\"{ay:.1}\" x2=\"{bx:.1}\" y2=\"{by:.1}\" \
             stroke=\"#de2d26\" stroke-width=\"2\"/>\n<circle cx=\"{bx:.1}\" cy=\"{by:.1}\" \
             r=\"3.5\" fill=\"#de2d26\"/>\n"
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{standard_cross, standard_cube};

    #[test]
    fn verdicts_map_to_exit_codes() {
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
        assert_eq!(Verdict::Error.exit_code(), 2);
    }

    #[test]
    fn width_request_reports_pass_with_certificate() {
        let rep = execute(&Request::Width(Instance::Polytope(standard_cube(2))));
        assert_eq!(rep.verdict, Verdict::Pass);
        let doc = rep.to_json();
        assert_eq!(doc["witness"]["width"], "2");
        assert_eq!(doc["witness"]["direction_count"], 4);
        assert_eq!(doc["command"], "width");
    }

    #[test]
    fn recognizer_requests_use_fail_for_rejection() {
        let rep = execute(&Request::RecognizeCube(Instance::Polytope(standard_cross(
            2,
        ))));
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.witness["accepted"], false);

        let rep = execute(&Request::RecognizeCross(Instance::Polytope(
            standard_cross(2),
        )));
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn hypothesis_failures_are_errors() {
        let tri = VPolytope::from_i64_points(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let rep = execute(&Request::Verify3d(Instance::Polytope(tri)));
        assert_eq!(rep.verdict, Verdict::Error);
        assert!(rep.error.unwrap().contains("symmetric"));
    }

    #[test]
    fn mod3_request_round_trips_vectors() {
        let rep = execute(&Request::Mod3 {
            instance: Instance::Polytope(standard_cube(2)),
            x: parse_int_csv("1,1", 2).unwrap(),
            y: parse_int_csv("1,0", 2).unwrap(),
        });
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.witness["z"], json!([1, -1]));
        assert_eq!(rep.witness["w"], json!([1, 0]));
    }

    #[test]
    fn csv_parsing_validates_shape() {
        assert!(parse_int_csv("1,2,3", 3).is_ok());
        assert!(parse_int_csv("1,2", 3).is_err());
        assert!(parse_int_csv("1,x", 2).is_err());
    }

    #[test]
    fn svg_drawing_mentions_every_vertex_like_shape() {
        let p = standard_cube(2);
        let svg = svg_drawing(&p, &[IntVec::from_i64(&[1, 0])]).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polygon"));
        assert!(svg.contains("<line"));
        assert!(svg_drawing(&standard_cube(3), &[]).is_err());
    }

    #[test]
    fn oracle_request_matches_engine_on_the_square() {
        let rep = execute(&Request::Oracle {
            instance: Instance::Polytope(standard_cube(2)),
            radius: 2,
        });
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.witness["width"], "2");
        assert_eq!(rep.witness["direction_count"], 4);
    }
}
