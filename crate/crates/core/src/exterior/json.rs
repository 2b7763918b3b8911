//! JSON encoding of multivectors and metrics.
//!
//! ```json
//! {"algebra": "su3", "degree": 3, "terms": [{"idx": [1, 2, 3], "num": 1, "den": 2}]}
//! ```
//! Indices are 1-based and strictly increasing. Float coefficients use
//! `{"val": "<decimal>"}`. Forms on a bare vector space use an algebra label
//! `R<n>` or carry an explicit `"dim"`.

use super::{mask_of, ExtError, FloatMultiVector, MultiVector};
use crate::lie_core::{parse_name, type_dim};
use crate::scalars::{float::to_decimal, SparseMatrix, Q};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

fn err(msg: impl Into<String>) -> ExtError {
    ExtError::Json(msg.into())
}

fn int_value(z: &rug::Integer) -> Value {
    match z.to_i64() {
        Some(v) => json!(v),
        None => json!(z.to_string()),
    }
}

/// `{"num": p, "den": q}`; big values are written as strings.
pub fn rational_fields(q: &Q, obj: &mut Map<String, Value>) {
    obj.insert("num".into(), int_value(q.numer()));
    obj.insert("den".into(), int_value(q.denom()));
}

pub fn rational_to_json(q: &Q) -> Value {
    let mut m = Map::new();
    rational_fields(q, &mut m);
    Value::Object(m)
}

fn parse_integer(v: &Value) -> Result<rug::Integer, ExtError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(rug::Integer::from)
            .ok_or_else(|| err(format!("non-integer number {n}"))),
        Value::String(s) => s.trim().parse::<rug::Integer>().map_err(|_| err(format!("bad integer '{s}'"))),
        _ => Err(err(format!("expected integer, got {v}"))),
    }
}

/// Accepts an integer, a `"p/q"` string or `{"num", "den"}`.
pub fn parse_rational(v: &Value) -> Result<Q, ExtError> {
    match v {
        Value::Object(o) => {
            let num = parse_integer(o.get("num").ok_or_else(|| err("missing 'num'"))?)?;
            let den = match o.get("den") {
                Some(d) => parse_integer(d)?,
                None => rug::Integer::from(1),
            };
            if den == 0 {
                return Err(err("zero denominator"));
            }
            Ok(Q::from((num, den)))
        }
        Value::String(s) => s.trim().parse::<Q>().map_err(|_| err(format!("bad rational '{s}'"))),
        Value::Number(_) => Ok(Q::from(parse_integer(v)?)),
        _ => Err(err(format!("expected a rational, got {v}"))),
    }
}

/// Ambient dimension for an algebra label (`su3`, `g2`, `R7`, ...).
pub fn ambient_dim(label: &str) -> Option<usize> {
    if let Some(rest) = label.strip_prefix('R').or_else(|| label.strip_prefix('r')) {
        if let Ok(n) = rest.parse() {
            return Some(n);
        }
    }
    parse_name(label).ok().map(type_dim)
}

pub fn to_json(a: &MultiVector) -> Value {
    let terms: Vec<Value> = a
        .sorted_terms()
        .into_iter()
        .map(|(idx, c)| {
            let mut o = Map::new();
            o.insert("idx".into(), json!(idx));
            rational_fields(&c, &mut o);
            Value::Object(o)
        })
        .collect();
    json!({"algebra": a.algebra.as_ref(), "dim": a.n, "degree": a.degree, "terms": terms})
}

pub fn float_to_json(a: &FloatMultiVector, digits: usize) -> Value {
    let terms: Vec<Value> = a
        .terms
        .iter()
        .map(|(m, v)| {
            let idx: Vec<usize> = super::mask_indices(*m).iter().map(|i| i + 1).collect();
            json!({"idx": idx, "val": to_decimal(v, digits)})
        })
        .collect();
    json!({"algebra": a.algebra.as_ref(), "dim": a.n, "degree": a.degree, "terms": terms})
}

/// Parses an exact multivector. Float `val` entries are rejected: every
/// downstream decision is exact.
pub fn from_json(v: &Value) -> Result<MultiVector, ExtError> {
    let o = v.as_object().ok_or_else(|| err("multivector must be a JSON object"))?;
    let algebra = o.get("algebra").and_then(Value::as_str).unwrap_or("R").to_string();
    let degree = o
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("missing or invalid 'degree'"))? as usize;
    let n = match o.get("dim").and_then(Value::as_u64) {
        Some(d) => d as usize,
        None => ambient_dim(&algebra).ok_or_else(|| err(format!("cannot infer dimension of '{algebra}'; add \"dim\"")))?,
    };
    if n > super::MAX_DIM {
        return Err(err(format!("dimension {n} exceeds the {}-index limit", super::MAX_DIM)));
    }
    let terms = o.get("terms").and_then(Value::as_array).ok_or_else(|| err("missing 'terms' array"))?;
    let mut map = BTreeMap::new();
    for t in terms {
        let to = t.as_object().ok_or_else(|| err("term must be an object"))?;
        let idx: Vec<usize> = to
            .get("idx")
            .and_then(Value::as_array)
            .ok_or_else(|| err("term without 'idx'"))?
            .iter()
            .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| err("index must be a positive integer")))
            .collect::<Result<_, _>>()?;
        if idx.len() != degree {
            return Err(err(format!("index tuple {idx:?} does not have length {degree}")));
        }
        if idx.iter().any(|&i| i == 0 || i > n) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(format!("index tuple {idx:?} is not strictly increasing in 1..={n}")));
        }
        if to.contains_key("val") {
            return Err(err("float coefficients are not accepted here; give num/den"));
        }
        let c = parse_rational(t)?;
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        *map.entry(mask_of(&zero_based)).or_insert_with(Q::new) += c;
    }
    let name: Arc<str> = Arc::from(algebra.as_str());
    Ok(MultiVector::from_terms(&name, n, degree, map))
}

/// Symmetric matrix: `{"matrix": [[entry, ...], ...]}` or a bare array.
pub fn metric_from_json(v: &Value) -> Result<SparseMatrix, ExtError> {
    let rows = match v {
        Value::Object(o) => o.get("matrix").ok_or_else(|| err("metric object needs 'matrix'"))?,
        other => other,
    };
    let rows = rows.as_array().ok_or_else(|| err("metric must be an array of rows"))?;
    let n = rows.len();
    let mut dense = Vec::with_capacity(n);
    for r in rows {
        let r = r.as_array().ok_or_else(|| err("metric row must be an array"))?;
        if r.len() != n {
            return Err(err("metric must be square"));
        }
        dense.push(r.iter().map(parse_rational).collect::<Result<Vec<Q>, _>>()?);
    }
    Ok(SparseMatrix::from_dense(&dense))
}

pub fn metric_to_json(m: &SparseMatrix) -> Value {
    let rows: Vec<Value> = m.to_dense().iter().map(|r| Value::Array(r.iter().map(rational_to_json).collect())).collect();
    json!({ "matrix": rows })
}
