//! Deterministic JSON serialization of every public artifact.
//!
//! Conventions shared by all formats: rationals are strings `"p/q"` (or
//! `"p"` when the denominator is 1), matrices are row-major arrays of such
//! strings, faces are identified by their sign strings, and object keys are
//! emitted in sorted order so identical inputs serialize byte-identically.
//!
//! Representations are serialized on Hasse edges only: `gamma` keys read
//! `"lower/upper"` and `delta` keys read `"upper/lower"`, both in
//! source-to-target order. Maps with no entries (a zero space on either
//! side) are omitted and reconstructed on load; maps on non-cover pairs are
//! recomposed along canonical cover chains, so a path-dependent input is
//! loadable and the composition check reports the disagreement afterwards.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::embed::EmbeddingMap;
use crate::error::{Error, Result};
use crate::functor::CorollaryVerdict;
use crate::linalg::Matrix;
use crate::poset::FacePoset;
use crate::relations::ViolationReport;
use crate::rep::DoubleRep;
use crate::report::Report;
use crate::simple::SimplicityCertificate;
use crate::{Rat, RatMatrix};

/// Pretty-prints with a trailing newline; object keys are already sorted.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values never fail to serialize");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Malformed(format!("missing field {key:?}")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::Malformed(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed(format!("{what} must be an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Malformed(format!("{what} must be an object")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Malformed(format!("{what} must be a nonnegative integer")))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    let s = as_str(v, "a rational entry")?;
    Rat::from_str(s)
        .map_err(|e| Error::Malformed(format!("invalid rational {s:?}: {e}")))
}

fn row_to_json(row: &[Rat]) -> Value {
    Value::Array(row.iter().map(rat_to_json).collect())
}

fn row_from_json(v: &Value, len: usize, what: &str) -> Result<Vec<Rat>> {
    let arr = as_array(v, what)?;
    if arr.len() != len {
        return Err(Error::Malformed(format!(
            "{what} has {} entries, expected {len}",
            arr.len()
        )));
    }
    arr.iter().map(rat_from_json).collect()
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| row_to_json(m.row(r))).collect())
}

pub fn matrix_from_json(v: &Value, rows: usize, cols: usize, what: &str) -> Result<RatMatrix> {
    let arr = as_array(v, what)?;
    if arr.len() != rows {
        return Err(Error::Malformed(format!(
            "{what} has {} rows, expected {rows}",
            arr.len()
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in arr {
        data.extend(row_from_json(row, cols, &format!("a row of {what}"))?);
    }
    Matrix::new(rows, cols, data)
}

pub fn arrangement_to_json(arr: &Arrangement) -> Value {
    json!({
        "ambient_dim": arr.ambient_dim,
        "subspace": arr.subspace.iter().map(|r| row_to_json(r)).collect::<Vec<_>>(),
        "hyperplanes": arr.hyperplanes.iter().map(|h| json!({
            "label": h.label,
            "normal": row_to_json(&h.normal),
        })).collect::<Vec<_>>(),
    })
}

pub fn arrangement_from_json(v: &Value) -> Result<Arrangement> {
    let ambient = as_usize(field(v, "ambient_dim")?, "ambient_dim")?;
    let subspace = as_array(field(v, "subspace")?, "subspace")?
        .iter()
        .map(|r| row_from_json(r, ambient, "a subspace row"))
        .collect::<Result<Vec<_>>>()?;
    let hyperplanes = as_array(field(v, "hyperplanes")?, "hyperplanes")?
        .iter()
        .map(|h| {
            Ok(Hyperplane {
                label: as_str(field(h, "label")?, "label")?.to_string(),
                normal: row_from_json(field(h, "normal")?, ambient, "a normal")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(ambient, subspace, hyperplanes)
}

pub fn poset_to_json(p: &FacePoset) -> Value {
    json!({
        "arrangement": arrangement_to_json(p.arrangement()),
        "faces": p.faces().iter().map(|f| json!({
            "signs": f.signs.to_string(),
            "dim": f.dim,
            "witness": row_to_json(&f.witness),
        })).collect::<Vec<_>>(),
        "hasse": p.hasse().iter().map(|&(lo, hi)| json!([
            p.face(lo).signs.to_string(),
            p.face(hi).signs.to_string(),
        ])).collect::<Vec<_>>(),
    })
}

fn poset_ref_to_json(p: &FacePoset) -> Value {
    match p.arrangement().braid_rank() {
        Some(n) => json!({ "braid": n }),
        None => json!({ "arrangement": arrangement_to_json(p.arrangement()) }),
    }
}

fn poset_ref_from_json(v: &Value) -> Result<Arc<FacePoset>> {
    if let Some(n) = v.get("braid") {
        return Ok(Arc::new(FacePoset::braid(as_usize(n, "braid")?)?));
    }
    if let Some(arr) = v.get("arrangement") {
        return Ok(Arc::new(FacePoset::build(arrangement_from_json(arr)?)?));
    }
    Err(Error::Malformed(
        "poset must be {\"braid\": n} or {\"arrangement\": {...}}".into(),
    ))
}

pub fn rep_to_json(rep: &DoubleRep) -> Value {
    let p = rep.poset();
    let name = |k: usize| p.face(k).signs.to_string();
    let mut dims = Map::new();
    for k in 0..p.len() {
        if rep.dim(k) > 0 {
            dims.insert(name(k), json!(rep.dim(k)));
        }
    }
    let mut gamma = Map::new();
    let mut delta = Map::new();
    for &(lo, hi) in p.hasse() {
        if rep.dim(lo) == 0 || rep.dim(hi) == 0 {
            continue;
        }
        gamma.insert(
            format!("{}/{}", name(lo), name(hi)),
            matrix_to_json(&rep.gamma(lo, hi)),
        );
        delta.insert(
            format!("{}/{}", name(hi), name(lo)),
            matrix_to_json(&rep.delta(lo, hi)),
        );
    }
    json!({
        "poset": poset_ref_to_json(p),
        "dims": dims,
        "gamma": gamma,
        "delta": delta,
    })
}

pub fn rep_from_json(v: &Value) -> Result<DoubleRep> {
    let poset = poset_ref_from_json(field(v, "poset")?)?;
    let mut dims = vec![0usize; poset.len()];
    for (key, value) in as_object(field(v, "dims")?, "dims")? {
        dims[poset.lookup_signs(key)?] = as_usize(value, &format!("dims[{key:?}]"))?;
    }

    let edge = |key: &str, reversed: bool| -> Result<(usize, usize)> {
        let (first, second) = key.split_once('/').ok_or_else(|| {
            Error::Malformed(format!("map key {key:?} is not of the form \"from/to\""))
        })?;
        let a = poset.lookup_signs(first)?;
        let b = poset.lookup_signs(second)?;
        let (lo, hi) = if reversed { (b, a) } else { (a, b) };
        if !poset.hasse().contains(&(lo, hi)) {
            return Err(Error::Malformed(format!(
                "map key {key:?} is not a cover relation of the poset"
            )));
        }
        Ok((lo, hi))
    };

    let mut gamma = BTreeMap::new();
    for (key, value) in as_object(field(v, "gamma")?, "gamma")? {
        let (lo, hi) = edge(key, false)?;
        let m = matrix_from_json(value, dims[hi], dims[lo], &format!("gamma[{key:?}]"))?;
        gamma.insert((lo, hi), m);
    }
    let mut delta = BTreeMap::new();
    for (key, value) in as_object(field(v, "delta")?, "delta")? {
        let (lo, hi) = edge(key, true)?;
        let m = matrix_from_json(value, dims[lo], dims[hi], &format!("delta[{key:?}]"))?;
        delta.insert((lo, hi), m);
    }
    // Maps without entries are omitted from files; reconstruct them.
    for &(lo, hi) in poset.hasse() {
        if dims[lo] == 0 || dims[hi] == 0 {
            gamma.entry((lo, hi)).or_insert_with(|| Matrix::zero(dims[hi], dims[lo]));
            delta.entry((lo, hi)).or_insert_with(|| Matrix::zero(dims[lo], dims[hi]));
        }
    }
    DoubleRep::from_edge_maps(poset, dims, gamma, delta)
}

pub fn embedding_to_json(emb: &EmbeddingMap) -> Value {
    let (i, j) = emb.pair();
    let mut table = Map::new();
    for (s, &t) in emb.table().iter().enumerate() {
        table.insert(
            emb.source().face(s).signs.to_string(),
            json!(emb.target().face(t).signs.to_string()),
        );
    }
    json!({ "n": emb.n(), "i": i, "j": j, "table": table })
}

pub fn violations_to_json(report: &ViolationReport) -> Value {
    Value::Array(
        report
            .violations
            .iter()
            .map(|v| {
                json!({
                    "relation": v.relation,
                    "faces": v.faces,
                    "identity": v.identity,
                })
            })
            .collect(),
    )
}

pub fn report_to_json(report: &Report) -> Value {
    let mut checks = Map::new();
    for c in &report.checks {
        checks.insert(c.name.clone(), json!({ "pass": c.pass, "detail": c.detail }));
    }
    json!({ "ok": report.ok(), "checks": checks })
}

pub fn certificate_to_json(cert: &SimplicityCertificate) -> Value {
    json!({
        "simple": cert.simple,
        "total_dim": cert.total_dim,
        "algebra_dim": cert.algebra_dim,
    })
}

pub fn verdict_to_json(verdict: &CorollaryVerdict) -> Value {
    json!({
        "chamber_profile": verdict.chamber_profile,
        "covering_hyperplanes": verdict.covering_hyperplanes
            .iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "recovered_via": verdict.recovered_via.map(|(i, j)| json!([i, j])),
        "max_codim_one_dim": verdict.max_codim_one_dim,
    })
}
