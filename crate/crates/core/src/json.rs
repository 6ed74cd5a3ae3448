//! JSON encodings shared by the report and the command line.
//!
//! Field elements are written as strings in the field's own notation
//! (`"3"`, `"w+1"`, `"-3/2"`, `"(X^2+1)/X"`). On input, integers are also
//! accepted and embedded in the field.
//!
//! ```text
//! SParams          {"p": "0", "q": "1", "a": "1", "b": "0", "c": "4", "d": "2"}
//! StructureMatrix  {"field": "F5", "rows": [["0","1"], ["0","1"], ["1","0"], ["4","2"]]}
//! Transform        [["1","1"], ["0","4"]]
//! ```

use serde_json::{json, Map, Value};

use crate::algebra::{SParams, StructureMatrix};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::iso::Transform;

pub fn elem_to_json<F: Field>(field: &F, x: &F::Elem) -> Value {
    Value::String(field.format_elem(x))
}

pub fn elem_from_json<F: Field>(field: &F, v: &Value) -> Result<F::Elem> {
    match v {
        Value::String(s) => field.parse_elem(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| field.from_i64(i))
            .ok_or_else(|| Error::Parse(format!("expected an integer, got {n}"))),
        other => Err(Error::Parse(format!("expected a field element, got {other}"))),
    }
}

pub fn sparams_to_json<F: Field>(field: &F, s: &SParams<F::Elem>) -> Value {
    let e = |x: &F::Elem| elem_to_json(field, x);
    json!({"p": e(&s.p), "q": e(&s.q), "a": e(&s.a), "b": e(&s.b), "c": e(&s.c), "d": e(&s.d)})
}

/// Accepts the object form or a six-element array `[p, q, a, b, c, d]`.
pub fn sparams_from_json<F: Field>(field: &F, v: &Value) -> Result<SParams<F::Elem>> {
    let values: Vec<&Value> = match v {
        Value::Object(map) => {
            if let Some(extra) = map.keys().find(|k| !["p", "q", "a", "b", "c", "d"].contains(&k.as_str())) {
                return Err(Error::Parse(format!("unexpected key `{extra}` in parameters")));
            }
            ["p", "q", "a", "b", "c", "d"]
                .iter()
                .map(|k| map.get(*k).ok_or_else(|| Error::Parse(format!("missing key `{k}`"))))
                .collect::<Result<_>>()?
        }
        Value::Array(items) if items.len() == 6 => items.iter().collect(),
        other => return Err(Error::Parse(format!("expected parameters p..d, got {other}"))),
    };
    let e: Vec<F::Elem> = values.into_iter().map(|x| elem_from_json(field, x)).collect::<Result<_>>()?;
    Ok(SParams::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone(), e[4].clone(), e[5].clone()))
}

pub fn matrix_to_json<F: Field>(field: &F, m: &StructureMatrix<F::Elem>) -> Value {
    let rows: Vec<Value> = m
        .rows
        .iter()
        .map(|r| Value::Array(r.iter().map(|x| elem_to_json(field, x)).collect()))
        .collect();
    let mut obj = Map::new();
    obj.insert("field".into(), Value::String(field.descriptor().to_string()));
    obj.insert("rows".into(), Value::Array(rows));
    Value::Object(obj)
}

/// Accepts `{"rows": [...]}` (with an optional matching `"field"`) or the
/// bare 4×2 array.
pub fn matrix_from_json<F: Field>(field: &F, v: &Value) -> Result<StructureMatrix<F::Elem>> {
    let rows = match v {
        Value::Object(map) => {
            if let Some(name) = map.get("field") {
                let expected = field.descriptor().to_string();
                let given: crate::fields::FieldDescriptor = name
                    .as_str()
                    .ok_or_else(|| Error::Parse("`field` must be a string".into()))?
                    .parse()?;
                if given.to_string() != expected {
                    return Err(Error::FieldMismatch(expected));
                }
            }
            map.get("rows").ok_or_else(|| Error::Parse("missing key `rows`".into()))?
        }
        other => other,
    };
    let rows = rows
        .as_array()
        .filter(|r| r.len() == 4)
        .ok_or_else(|| Error::Parse("expected 4 rows".into()))?;
    let mut out: Vec<[F::Elem; 2]> = Vec::with_capacity(4);
    for r in rows {
        let pair = r
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse("each row needs 2 entries".into()))?;
        out.push([elem_from_json(field, &pair[0])?, elem_from_json(field, &pair[1])?]);
    }
    let rows: [[F::Elem; 2]; 4] = out.try_into().map_err(|_| Error::Parse("expected 4 rows".into()))?;
    Ok(StructureMatrix::new(rows))
}

/// Structure matrix from either encoding: parameters or rows.
pub fn algebra_from_json<F: Field>(field: &F, v: &Value) -> Result<StructureMatrix<F::Elem>> {
    let looks_like_params = match v {
        Value::Object(map) => map.contains_key("p"),
        Value::Array(items) => items.len() == 6,
        _ => false,
    };
    if looks_like_params {
        Ok(sparams_from_json(field, v)?.to_structure_matrix(field))
    } else {
        matrix_from_json(field, v)
    }
}

pub fn transform_to_json<F: Field>(field: &F, t: &Transform<F::Elem>) -> Value {
    let e = |x: &F::Elem| elem_to_json(field, x);
    json!([[e(&t.x), e(&t.y)], [e(&t.z), e(&t.w)]])
}

pub fn transform_from_json<F: Field>(field: &F, v: &Value) -> Result<Transform<F::Elem>> {
    let bad = || Error::Parse(format!("expected [[x, y], [z, w]], got {v}"));
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
    let mut e = Vec::with_capacity(4);
    for r in rows {
        let pair = r.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
        for x in pair {
            e.push(elem_from_json(field, x)?);
        }
    }
    Ok(Transform::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()))
}
