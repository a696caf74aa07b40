//! JSON (de)serialization for towers, elements, weights, codes and Moore
//! specs. Coefficient lists are little-endian (constant term first). The
//! modulus g and field elements are flattened integers when e = 1 and nested
//! base-field tuples when e > 1. Serialized data always embeds its moduli,
//! so interoperability never depends on the canonical modulus convention.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::{FieldTower, FqElem, FqmElem, TowerRef};
use crate::linalg::Matrix;
use crate::metrics::{LengthPartition, WeightFunction};
use crate::moore::{default_a_vector, default_beta, MooreSpec};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn as_object<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be an object")))
}

fn get<'v>(obj: &'v Map<String, Value>, key: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing key \"{key}\"")))
}

fn get_u64(obj: &Map<String, Value>, key: &str) -> Result<u64> {
    get(obj, key)?
        .as_u64()
        .ok_or_else(|| bad(format!("\"{key}\" must be a nonnegative integer")))
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    Ok(get_u64(obj, key)? as usize)
}

fn int_list(v: &Value, what: &str) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| bad(format!("{what} must hold integers"))))
        .collect()
}

fn fq_to_json(tower: &FieldTower, x: &FqElem) -> Value {
    if tower.e == 1 {
        json!(x.coeffs()[0])
    } else {
        json!(x.coeffs())
    }
}

fn fq_from_json(tower: &FieldTower, v: &Value) -> Result<FqElem> {
    let coeffs = if tower.e == 1 {
        vec![v.as_u64().ok_or_else(|| bad("base-field coefficient must be an integer"))?]
    } else {
        int_list(v, "base-field coefficient")?
    };
    if coeffs.len() != tower.e || coeffs.iter().any(|&c| c >= tower.p) {
        return Err(bad("base-field coefficient out of canonical form"));
    }
    Ok(FqElem(coeffs))
}

pub fn element_to_json(tower: &FieldTower, x: &FqmElem) -> Value {
    Value::Array(x.coeffs().iter().map(|c| fq_to_json(tower, c)).collect())
}

pub fn element_from_json(tower: &FieldTower, v: &Value) -> Result<FqmElem> {
    let arr = v.as_array().ok_or_else(|| bad("element must be a coefficient array"))?;
    if arr.len() != tower.m {
        return Err(bad(format!(
            "element must have {} coefficients, got {}",
            tower.m,
            arr.len()
        )));
    }
    Ok(FqmElem(
        arr.iter().map(|c| fq_from_json(tower, c)).collect::<Result<_>>()?,
    ))
}

pub fn tower_to_json(tower: &FieldTower) -> Value {
    json!({
        "p": tower.p,
        "e": tower.e,
        "m": tower.m,
        "f": tower.f_coeffs(),
        "g": tower.g_coeffs().iter().map(|c| fq_to_json(tower, c)).collect::<Vec<_>>(),
    })
}

pub fn tower_from_json(v: &Value) -> Result<TowerRef> {
    let obj = as_object(v, "field")?;
    let p = get_u64(obj, "p")?;
    let e = get_usize(obj, "e")?;
    let m = get_usize(obj, "m")?;
    let f = int_list(get(obj, "f")?, "\"f\"")?;
    let g_raw = get(obj, "g")?
        .as_array()
        .ok_or_else(|| bad("\"g\" must be an array"))?;
    let g: Vec<Vec<u64>> = if e == 1 {
        g_raw
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|c| vec![c])
                    .ok_or_else(|| bad("\"g\" must hold integers when e = 1"))
            })
            .collect::<Result<_>>()?
    } else {
        g_raw
            .iter()
            .map(|x| int_list(x, "\"g\" coefficient"))
            .collect::<Result<_>>()?
    };
    Ok(Arc::new(FieldTower::with_moduli(p, e, m, f, g)?))
}

pub fn weight_to_json(w: &WeightFunction) -> Value {
    match w {
        WeightFunction::Hamming { len } => json!({"kind": "hamming", "len": len}),
        WeightFunction::Rank { len } => json!({"kind": "rank", "len": len}),
        WeightFunction::SumRank(p) => json!({"kind": "sumrank", "g": p.blocks, "r": p.block_len}),
        WeightFunction::Composite(parts) => json!({
            "kind": "composite",
            "parts": parts.iter().map(weight_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn weight_from_json(v: &Value) -> Result<WeightFunction> {
    let obj = as_object(v, "weight")?;
    let kind = get(obj, "kind")?
        .as_str()
        .ok_or_else(|| bad("\"kind\" must be a string"))?;
    match kind {
        "hamming" => Ok(WeightFunction::Hamming { len: get_usize(obj, "len")? }),
        "rank" => Ok(WeightFunction::Rank { len: get_usize(obj, "len")? }),
        "sumrank" => Ok(WeightFunction::SumRank(LengthPartition::new(
            get_usize(obj, "g")?,
            get_usize(obj, "r")?,
        )?)),
        "composite" => {
            let parts = get(obj, "parts")?
                .as_array()
                .ok_or_else(|| bad("\"parts\" must be an array"))?;
            Ok(WeightFunction::Composite(
                parts.iter().map(weight_from_json).collect::<Result<_>>()?,
            ))
        }
        other => Err(bad(format!("unknown weight kind \"{other}\""))),
    }
}

pub fn code_to_json(code: &LinearCode) -> Value {
    let tower = code.tower();
    let rows: Vec<Value> = (0..code.generator().rows())
        .map(|i| {
            Value::Array(
                code.generator()
                    .row(i)
                    .iter()
                    .map(|x| element_to_json(tower, x))
                    .collect(),
            )
        })
        .collect();
    json!({
        "field": tower_to_json(tower),
        "n": code.length(),
        "k": code.dimension(),
        "weight": weight_to_json(code.weight_fn()),
        "generator": rows,
    })
}

pub fn code_from_json(v: &Value) -> Result<LinearCode> {
    let obj = as_object(v, "code")?;
    let tower = tower_from_json(get(obj, "field")?)?;
    let weight = weight_from_json(get(obj, "weight")?)?;
    let n = get_usize(obj, "n")?;
    let k = get_usize(obj, "k")?;
    let rows_json = get(obj, "generator")?
        .as_array()
        .ok_or_else(|| bad("\"generator\" must be an array of rows"))?;
    let mut rows = Vec::with_capacity(rows_json.len());
    for row in rows_json {
        let cells = row
            .as_array()
            .ok_or_else(|| bad("generator rows must be arrays"))?;
        rows.push(
            cells
                .iter()
                .map(|c| element_from_json(&tower, c))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let gen = Matrix::from_rows(rows)?;
    if gen.rows() != k || gen.cols() != n {
        return Err(bad(format!(
            "generator is {}x{} but the header says {}x{}",
            gen.rows(),
            gen.cols(),
            k,
            n
        )));
    }
    LinearCode::new(tower, gen, weight)
}

/// Lattices serialize as arrays of (subset bitmask, code, distance) triples,
/// in the lattice's member order.
pub fn lattice_to_json(lattice: &crate::extend::ExtensionLattice) -> Value {
    Value::Array(
        lattice
            .members()
            .iter()
            .map(|m| json!([m.subset, code_to_json(&m.code), m.distance]))
            .collect(),
    )
}

pub fn moore_to_json(spec: &MooreSpec) -> Value {
    let tower = spec.tower();
    json!({
        "field": tower_to_json(tower),
        "ell": spec.ell(),
        "mu": spec.mu(),
        "r": spec.r(),
        "k": spec.k(),
        "a": spec.a().iter().map(|x| element_to_json(tower, x)).collect::<Vec<_>>(),
        "beta": spec.beta().iter().map(|x| element_to_json(tower, x)).collect::<Vec<_>>(),
    })
}

/// Parses a Moore spec. Omitted "a"/"beta" trigger the default generators
/// (primitive-element powers and the canonical field-reduction support).
pub fn moore_from_json(v: &Value) -> Result<MooreSpec> {
    let obj = as_object(v, "moore spec")?;
    let tower = tower_from_json(get(obj, "field")?)?;
    let ell = get_usize(obj, "ell")?;
    let mu = get_usize(obj, "mu")?;
    let r = get_usize(obj, "r")?;
    let k = get_usize(obj, "k")?;
    let a = match obj.get("a") {
        Some(v) => {
            let arr = v.as_array().ok_or_else(|| bad("\"a\" must be an array"))?;
            let a: Vec<FqmElem> = arr
                .iter()
                .map(|x| element_from_json(&tower, x))
                .collect::<Result<_>>()?;
            if a.len() != ell {
                return Err(bad(format!("\"a\" must have ell = {ell} entries")));
            }
            a
        }
        None => default_a_vector(&tower, ell)?,
    };
    let beta = match obj.get("beta") {
        Some(v) => {
            let arr = v.as_array().ok_or_else(|| bad("\"beta\" must be an array"))?;
            arr.iter()
                .map(|x| element_from_json(&tower, x))
                .collect::<Result<_>>()?
        }
        None => default_beta(&tower, mu, r)?,
    };
    MooreSpec::new(tower, a, beta, mu, r, k)
}
