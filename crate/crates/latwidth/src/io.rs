//! Instance files: JSON with exact arithmetic. Rationals travel as
//! strings `"p"` or `"p/q"`; integers as JSON numbers when they fit in
//! i64 and as strings otherwise. Floating-point numbers are rejected —
//! nothing in this crate rounds.

use std::str::FromStr;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVec, Rat, RatVec};
use crate::polytope::{HPolyhedron, Instance, VPolytope};

pub const FORMAT_VERSION: u64 = 1;

pub fn int_from_value(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(Error::Parse(format!(
                    "expected an exact integer, got floating point {n}"
                )))
            }
        }
        Value::String(s) => {
            Int::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
        }
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

pub fn rat_from_value(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(_) => int_from_value(v).map(Rat::from_integer),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                None => Int::from_str(s)
                    .map(Rat::from_integer)
                    .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}"))),
                Some((p, q)) => {
                    let num = Int::from_str(p.trim())
                        .map_err(|e| Error::Parse(format!("bad numerator {p:?}: {e}")))?;
                    let den = Int::from_str(q.trim())
                        .map_err(|e| Error::Parse(format!("bad denominator {q:?}: {e}")))?;
                    if den == Int::from(0) {
                        return Err(Error::Parse(format!("zero denominator in {s:?}")));
                    }
                    Ok(Rat::new(num, den))
                }
            }
        }
        other => Err(Error::Parse(format!("expected rational, got {other}"))),
    }
}

pub fn int_to_value(x: &Int) -> Value {
    match num_traits::ToPrimitive::to_i64(x) {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

pub fn rat_to_value(x: &Rat) -> Value {
    if x.is_integer() {
        json!(x.numer().to_string())
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn ivec_to_value(v: &IntVec) -> Value {
    Value::Array(v.iter().map(int_to_value).collect())
}

pub fn rvec_to_value(v: &RatVec) -> Value {
    Value::Array(v.iter().map(rat_to_value).collect())
}

fn rvec_from_value(v: &Value, dim: usize) -> Result<RatVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected coordinate array, got {v}")))?;
    if arr.len() != dim {
        return Err(Error::Parse(format!(
            "point has {} coordinates, instance dimension is {dim}",
            arr.len()
        )));
    }
    Ok(RatVec::new(
        arr.iter().map(rat_from_value).collect::<Result<_>>()?,
    ))
}

fn ivec_from_value(v: &Value, dim: usize) -> Result<IntVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected integer array, got {v}")))?;
    if arr.len() != dim {
        return Err(Error::Parse(format!(
            "normal has {} coordinates, instance dimension is {dim}",
            arr.len()
        )));
    }
    Ok(IntVec::new(
        arr.iter().map(int_from_value).collect::<Result<_>>()?,
    ))
}

/// Parse an instance document. Vertex lists are canonicalized to their
/// extreme points; inequality lists to primitive irredundant form.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("instance document must be a JSON object".to_string()))?;
    if let Some(v) = obj.get("format_version") {
        match v.as_u64() {
            Some(FORMAT_VERSION) => {}
            _ => {
                return Err(Error::Parse(format!(
                    "unsupported format_version {v}, expected {FORMAT_VERSION}"
                )))
            }
        }
    }
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing or invalid \"dim\"".to_string()))?
        as usize;
    if dim == 0 {
        return Err(Error::Parse("\"dim\" must be at least 1".to_string()));
    }
    match (obj.get("vertices"), obj.get("inequalities")) {
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either \"vertices\" or \"inequalities\", not both".to_string(),
        )),
        (None, None) => Err(Error::Parse(
            "instance needs \"vertices\" or \"inequalities\"".to_string(),
        )),
        (Some(vs), None) => {
            let arr = vs
                .as_array()
                .ok_or_else(|| Error::Parse("\"vertices\" must be an array".to_string()))?;
            let pts: Vec<RatVec> = arr
                .iter()
                .map(|v| rvec_from_value(v, dim))
                .collect::<Result<_>>()?;
            Ok(Instance::Polytope(VPolytope::new(dim, &pts)?))
        }
        (None, Some(cs)) => {
            let arr = cs
                .as_array()
                .ok_or_else(|| Error::Parse("\"inequalities\" must be an array".to_string()))?;
            let mut constraints = Vec::with_capacity(arr.len());
            for c in arr {
                let co = c.as_object().ok_or_else(|| {
                    Error::Parse(format!("inequality must be an object, got {c}"))
                })?;
                let normal = ivec_from_value(
                    co.get("normal")
                        .ok_or_else(|| Error::Parse("inequality missing \"normal\"".into()))?,
                    dim,
                )?;
                let rhs = rat_from_value(
                    co.get("rhs")
                        .ok_or_else(|| Error::Parse("inequality missing \"rhs\"".into()))?,
                )?;
                constraints.push((normal, rhs));
            }
            Ok(Instance::Polyhedron(HPolyhedron::new(dim, &constraints)?))
        }
    }
}

/// Canonical serialization: sorted keys, canonical vertex/constraint
/// order, exact coordinates.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut obj = Map::new();
    obj.insert("format_version".to_string(), json!(FORMAT_VERSION));
    obj.insert("dim".to_string(), json!(inst.ambient_dim() as u64));
    match inst {
        Instance::Polytope(p) => {
            obj.insert(
                "vertices".to_string(),
                Value::Array(p.vertices().iter().map(rvec_to_value).collect()),
            );
        }
        Instance::Polyhedron(h) => {
            obj.insert(
                "inequalities".to_string(),
                Value::Array(
                    h.constraints()
                        .iter()
                        .map(|(n, b)| {
                            let mut c = Map::new();
                            c.insert("normal".to_string(), ivec_to_value(n));
                            c.insert("rhs".to_string(), rat_to_value(b));
                            Value::Object(c)
                        })
                        .collect(),
                ),
            );
        }
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("serialization cannot fail")
}

/// Hex SHA-256 of the canonical serialization — stable identifier for an
/// instance independent of input formatting.
pub fn instance_digest(inst: &Instance) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serialize_instance(inst).as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
