//! JSON encodings. Polynomials are strings in the text grammar everywhere;
//! matrices are arrays of rows. Decoders report the JSON path of the
//! offending value in the message and the byte offset inside the string.

use serde_json::{json, Map, Value};

use crate::cend::{CendElem, LambdaSeries, ModSeries, ModVec};
use crate::error::{CendError, Result};
use crate::poly::{format_rat, parse_mpoly_in, parse_rat, MPoly, Rat, UPoly, Var};
use crate::polymat::{PolyMat, SmithCert};

pub fn rat_json(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn upoly_json(p: &UPoly, v: Var) -> Value {
    Value::String(p.to_mpoly(v).to_string())
}

pub fn upolys_json(ps: &[UPoly], v: Var) -> Value {
    Value::Array(ps.iter().map(|p| upoly_json(p, v)).collect())
}

pub fn polymat_json(m: &PolyMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| upolys_json(m.row(i), Var::X))
            .collect(),
    )
}

pub fn cend_json(a: &CendElem) -> Value {
    let n = a.n();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| Value::String(a.get(i, j).to_string())).collect()))
            .collect(),
    )
}

fn exp_key(k: &(u32, u32)) -> String {
    match k.1 {
        0 => format!("l^{}", k.0),
        m => format!("l^{}*m^{m}", k.0),
    }
}

pub fn lambda_series_json(s: &LambdaSeries) -> Value {
    let mut map = Map::new();
    for (k, c) in s.terms() {
        map.insert(exp_key(k), cend_json(c));
    }
    Value::Object(map)
}

pub fn modvec_json(v: &ModVec) -> Value {
    Value::Array(v.entries().iter().map(|e| Value::String(e.to_string())).collect())
}

pub fn mod_series_json(s: &ModSeries) -> Value {
    let mut map = Map::new();
    for (k, v) in s.terms() {
        map.insert(exp_key(k), modvec_json(v));
    }
    Value::Object(map)
}

pub fn smith_json(c: &SmithCert) -> Value {
    json!({
        "divisors": upolys_json(&c.divisors, Var::X),
        "left": polymat_json(&c.left),
        "right": polymat_json(&c.right),
    })
}

fn err(path: &str, message: impl std::fmt::Display) -> CendError {
    CendError::Parse {
        offset: 0,
        message: format!("{path}: {message}"),
    }
}

/// A polynomial string (or integer) using only `vars`.
pub fn poly_from_json(v: &Value, vars: &[Var], path: &str) -> Result<MPoly> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(err(path, "expected a polynomial string")),
    };
    parse_mpoly_in(&text, vars).map_err(|e| match e {
        CendError::Parse { offset, message } => CendError::Parse {
            offset,
            message: format!("{path}: {message}"),
        },
        other => other,
    })
}

pub fn rat_from_json(v: &Value, path: &str) -> Result<Rat> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(err(path, "expected a rational such as \"-1/2\"")),
    };
    parse_rat(&text).ok_or_else(|| err(path, format!("bad rational {text:?}")))
}

pub fn upoly_from_json(v: &Value, var: Var, path: &str) -> Result<UPoly> {
    let p = poly_from_json(v, &[var], path)?;
    Ok(UPoly::from_mpoly(&p, var).expect("single variable"))
}

/// Square array of rows; a bare string is a `1 x 1` matrix.
fn square_cells<'a>(v: &'a Value, path: &str) -> Result<Vec<Vec<&'a Value>>> {
    if v.is_string() || v.is_number() {
        return Ok(vec![vec![v]]);
    }
    let rows = v.as_array().ok_or_else(|| err(path, "expected an array of rows"))?;
    if rows.is_empty() {
        return Err(err(path, "empty matrix"));
    }
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| err(&format!("{path}[{i}]"), "expected a row array"))?;
        if r.len() != n {
            return Err(err(path, format!("matrix is not square: row {i} has {} entries, expected {n}", r.len())));
        }
        out.push(r.iter().collect());
    }
    Ok(out)
}

pub fn polymat_from_json(v: &Value, path: &str) -> Result<PolyMat> {
    let cells = square_cells(v, path)?;
    let rows = cells
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, c)| upoly_from_json(c, Var::X, &format!("{path}[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMat::from_rows(rows)
}

pub fn cend_from_json(v: &Value, path: &str) -> Result<CendElem> {
    let cells = square_cells(v, path)?;
    let n = cells.len();
    let mut entries = Vec::with_capacity(n * n);
    for (i, r) in cells.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            entries.push(poly_from_json(c, &[Var::D, Var::X], &format!("{path}[{i}][{j}]"))?);
        }
    }
    CendElem::from_entries(n, entries)
}

/// Array of polynomials in `∂`; a bare string is a length-1 vector.
pub fn modvec_from_json(v: &Value, path: &str) -> Result<ModVec> {
    let items: Vec<&Value> = match v {
        Value::Array(a) => a.iter().collect(),
        other => vec![other],
    };
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, e)| poly_from_json(e, &[Var::D], &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModVec::new(entries))
}

pub fn cend_list_from_json(v: &Value, path: &str) -> Result<Vec<CendElem>> {
    let items = v.as_array().ok_or_else(|| err(path, "expected a list"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, e)| cend_from_json(e, &format!("{path}[{i}]")))
        .collect()
}

pub fn polymat_list_from_json(v: &Value, path: &str) -> Result<Vec<PolyMat>> {
    let items = v.as_array().ok_or_else(|| err(path, "expected a list"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, e)| polymat_from_json(e, &format!("{path}[{i}]")))
        .collect()
}

/// Required object field.
pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err("$", format!("missing field \"{key}\"")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cend::lambda_product;
    use crate::poly::{parse_mpoly, ratio};

    #[test]
    fn matrix_round_trip() {
        let v: Value = serde_json::from_str(r#"[["x","1"],["0","x"]]"#).unwrap();
        let m = polymat_from_json(&v, "$").unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(polymat_json(&m), v);
        let v: Value = serde_json::from_str(r#"[["x","1"]]"#).unwrap();
        assert!(matches!(polymat_from_json(&v, "$"), Err(CendError::Parse { .. })));
        let v: Value = serde_json::from_str(r#"[["d","1"],["0","x"]]"#).unwrap();
        assert!(polymat_from_json(&v, "$").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        let v = Value::String("x^".into());
        match poly_from_json(&v, &Var::ALL, "$.a") {
            Err(CendError::Parse { offset, message }) => {
                assert_eq!(offset, 2);
                assert!(message.starts_with("$.a"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn series_keys() {
        let a = CendElem::single(parse_mpoly("x").unwrap());
        let s = lambda_product(&a, &CendElem::single(MPoly::one())).unwrap();
        let j = lambda_series_json(&s);
        assert_eq!(j["l^0"], json!([["d + x"]]));
        assert_eq!(j["l^1"], json!([["1"]]));
        assert_eq!(rat_json(&ratio(-1, 2)), json!("-1/2"));
        assert_eq!(rat_from_json(&json!("3/6"), "$").unwrap(), ratio(1, 2));
    }

    #[test]
    fn elem_and_vector() {
        let a = cend_from_json(&json!("x^2 + 1/2*d"), "$").unwrap();
        assert_eq!(a.get(0, 0).num_terms(), 2);
        assert_eq!(cend_from_json(&cend_json(&a), "$").unwrap(), a);
        let v = modvec_from_json(&json!(["d", "1"]), "$").unwrap();
        assert_eq!(modvec_json(&v), json!(["d", "1"]));
        assert!(modvec_from_json(&json!(["x"]), "$").is_err());
    }
}
