//! Stable JSON result schema (`"schema": 1`).
//!
//! Tensors are `{"arity": k, "terms": [{"coords": [...], "coeff": "..."}]}`
//! with coordinates given by basis names and coefficients in the same text
//! syntax the DSL accepts, so emitted values can be read back.

use serde_json::{json, Map, Value};

use crate::frobenius::{FrobeniusSystem, TensorElem};

use super::{parse_expr, Scope};

pub const SCHEMA: u64 = 1;

pub fn tensor_to_json(sys: &FrobeniusSystem, t: &TensorElem) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(slots, c)| {
            let coords: Vec<&str> = slots.iter().map(|&s| sys.basis_names()[s].as_str()).collect();
            json!({ "coords": coords, "coeff": c.to_string() })
        })
        .collect();
    json!({ "arity": t.arity(), "terms": terms })
}

/// Inverse of [`tensor_to_json`]; also accepts a whole result object.
pub fn tensor_from_json(sys: &FrobeniusSystem, v: &Value) -> Result<TensorElem, String> {
    let arity = v.get("arity").and_then(Value::as_u64).ok_or("missing `arity`")? as usize;
    let terms = v.get("terms").and_then(Value::as_array).ok_or("missing `terms`")?;
    let scope = Scope::of(sys);
    let mut out = TensorElem::zero(arity);
    for term in terms {
        let coords = term.get("coords").and_then(Value::as_array).ok_or("term without `coords`")?;
        if coords.len() != arity {
            return Err(format!("term has {} coordinates, expected {arity}", coords.len()));
        }
        let slots = coords
            .iter()
            .map(|c| {
                let name = c.as_str().ok_or("coordinate is not a string")?;
                sys.basis_index(name).ok_or_else(|| format!("unknown basis element `{name}`"))
            })
            .collect::<Result<Vec<_>, String>>()?;
        let text = term.get("coeff").and_then(Value::as_str).ok_or("term without `coeff`")?;
        let coeff = parse_expr(text)
            .and_then(|e| scope.eval_scalar(&e))
            .map_err(|d| format!("coefficient `{text}`: {}", d.message))?;
        out.add_term(slots, coeff);
    }
    Ok(out)
}

/// A result object with the common header fields.
pub fn report(result: &str, algebra: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("result".into(), json!(result));
    m.insert("algebra".into(), json!(algebra));
    m
}

/// [`report`] for a tensor-valued result.
pub fn tensor_report(
    result: &str,
    sys: &FrobeniusSystem,
    signature: (usize, usize),
    symbols: Option<&[String]>,
    t: &TensorElem,
) -> Value {
    let mut m = report(result, sys.name());
    m.insert("signature".into(), json!([signature.0, signature.1]));
    if let Some(s) = symbols {
        m.insert("symbols".into(), json!(s));
    }
    if let Value::Object(body) = tensor_to_json(sys, t) {
        m.extend(body);
    }
    Value::Object(m)
}
