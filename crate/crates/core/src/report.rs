//! JSON forms of ideals, polyhedra and invariant reports.
//!
//! Rationals are reduced `"p/q"` strings (`"p"` when integral). Counts are
//! JSON numbers; unbounded integer invariants such as `c` are strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{StabilizationReport, StabilizationWitness};
use crate::ideal::{ExponentVector, MonomialIdeal};
use crate::invariants::{HadamardBound, InvariantReport, SgtBounds, SvdBounds, VertexConstants};
use crate::polyhedron::{self, HalfSpace, RationalPolyhedron};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::simis::{HilbertBasisReport, SvdProbe, VeroneseCheck};

pub fn rat(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn big(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

/// Polyhedron entries are usually small; huge ones fall back to strings.
fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => Value::String(v.to_string()),
    }
}

pub fn point(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn exponent(a: &ExponentVector) -> Value {
    json!(a.entries())
}

pub fn ideal(i: &MonomialIdeal) -> Value {
    json!({
        "nvars": i.nvars(),
        "gens": i.generators().iter().map(exponent).collect::<Vec<_>>(),
    })
}

pub fn polyhedron(p: &RationalPolyhedron) -> Result<Value> {
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|h| {
            json!({
                "normal": h.normal().iter().map(int).collect::<Vec<_>>(),
                "offset": int(h.offset()),
            })
        })
        .collect();
    Ok(json!({
        "nvars": p.nvars(),
        "facets": facets,
        "vertices": p.vertices().iter().map(|v| point(v)).collect::<Vec<_>>(),
        "rays": p.rays().iter().map(|r| r.iter().map(int).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "mdc": polyhedron::mdc(p)?,
    }))
}

fn bad(message: &str) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: message.to_string(),
    }
}

fn value_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("expected an integer")),
        Value::String(s) => s.parse().map_err(|_| bad("expected an integer")),
        _ => Err(bad("expected an integer")),
    }
}

pub fn value_rat(v: &Value) -> Result<Rat> {
    v.as_str()
        .and_then(parse_rat)
        .ok_or_else(|| bad("expected a rational string"))
}

/// Rebuilds a polyhedron from its JSON facets and checks the listed vertices.
pub fn polyhedron_from_json(v: &Value) -> Result<RationalPolyhedron> {
    let n = v["nvars"].as_u64().ok_or_else(|| bad("missing nvars"))? as usize;
    let facets = v["facets"].as_array().ok_or_else(|| bad("missing facets"))?;
    let mut hs = Vec::with_capacity(facets.len());
    for f in facets {
        let normal = f["normal"]
            .as_array()
            .ok_or_else(|| bad("missing normal"))?
            .iter()
            .map(value_int)
            .collect::<Result<Vec<_>>>()?;
        hs.push(HalfSpace::new(normal, value_int(&f["offset"])?));
    }
    let p = polyhedron::from_halfspaces(&hs, n)?;
    let listed = v["vertices"]
        .as_array()
        .ok_or_else(|| bad("missing vertices"))?
        .iter()
        .map(|pt| {
            pt.as_array()
                .ok_or_else(|| bad("vertex must be an array"))?
                .iter()
                .map(value_rat)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if listed.as_slice() != p.vertices() {
        return Err(bad("listed vertices do not match the facets"));
    }
    Ok(p)
}

pub fn constants(k: &VertexConstants) -> Value {
    json!({
        "denominators": k.denoms.iter().map(big).collect::<Vec<_>>(),
        "c": big(&k.c),
        "D": big(&k.d_max),
    })
}

pub fn svd(s: &SvdBounds) -> Value {
    json!({"lower": big(&s.lower), "upper": big(&s.upper), "clamped": s.clamped})
}

pub fn hadamard(h: &HadamardBound) -> Value {
    json!({
        "h_squared": rat(&h.h_squared),
        "h": h.h.as_ref().map(rat),
        "bound": h.bound.as_ref().map(rat),
        "bound_floor": big(&h.bound_floor),
    })
}

pub fn sgt_bounds(s: &SgtBounds) -> Value {
    json!({
        "general": big(&s.general),
        "np_eq_sp": s.np_eq_sp.as_ref().map(big),
        "hadamard": hadamard(&s.hadamard),
    })
}

pub fn invariants(r: &InvariantReport) -> Value {
    let mut m = Map::new();
    m.insert("nvars".into(), json!(r.nvars));
    m.insert("kind".into(), json!(r.kind));
    m.insert("ell".into(), json!(r.ell));
    m.insert("ell_s".into(), json!(r.ell_s));
    if let Value::Object(k) = constants(&r.constants) {
        m.extend(k);
    }
    m.insert("np_equals_sp".into(), json!(r.np_equals_sp));
    m.insert("svd_bounds".into(), svd(&r.svd));
    m.insert("sgt_bounds".into(), sgt_bounds(&r.sgt));
    Value::Object(m)
}

/// Elements in the `(a, k)` form.
pub fn hilbert(r: &HilbertBasisReport) -> Value {
    let elements: Vec<Value> = r
        .elements
        .iter()
        .map(|e| {
            let mut v: Vec<u32> = e.exponent.to_vec();
            v.push(e.degree);
            json!(v)
        })
        .collect();
    json!({
        "elements": elements,
        "count": r.elements.len(),
        "degrees": r.degrees,
        "sgt": r.sgt,
        "degree_bound_used": r.degree_bound_used,
        "completeness_bound": r.completeness_bound,
        "exhaustive": r.exhaustive,
    })
}

pub fn veronese(v: &VeroneseCheck) -> Value {
    json!({"d": v.d, "k_max": v.k_max, "holds": v.holds, "counterexample_k": v.counterexample})
}

pub fn svd_probe(p: &SvdProbe) -> Value {
    json!({
        "c": p.c,
        "candidate": p.candidate,
        "certified_upper": p.certified_upper,
        "k_max": p.k_max,
        "conclusive": p.conclusive,
    })
}

fn witness(w: &StabilizationWitness) -> Value {
    json!({
        "c_tested": w.c_tested,
        "vertex": point(&w.vertex),
        "outside": w.outside.iter().map(|v| point(v)).collect::<Vec<_>>(),
    })
}

pub fn stabilization(r: &StabilizationReport) -> Value {
    json!({
        "stabilized": r.stabilized,
        "c": r.c,
        "c_max": r.c_max,
        "witness": r.witness.as_ref().map(witness),
    })
}
