//! Canonical JSON: sorted keys, two-space indentation, floats as `{:.16e}`
//! (17 significant digits), integers verbatim. Complex numbers are
//! `[re, im]` pairs.

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::exterior::Multi;
use crate::linalg::{CMat, Mat3};
use crate::{c, Scalar};

/// Serializes `v` canonically, with a trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(n, out),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
            } else if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, depth, out);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    indent(depth + 1, out);
                    write_value(x, depth + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                indent(depth, out);
                out.push(']');
            }
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                indent(depth + 1, out);
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(&map[k.as_str()], depth + 1, out);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            indent(depth, out);
            out.push('}');
        }
    }
}

fn indent(depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_number(n: &Number, out: &mut String) {
    if let Some(i) = n.as_i64() {
        out.push_str(&i.to_string());
    } else if let Some(u) = n.as_u64() {
        out.push_str(&u.to_string());
    } else {
        out.push_str(&format!("{:.16e}", n.as_f64().expect("finite JSON number")));
    }
}

/// Finite float as a JSON number; non-finite values become `null`.
pub fn real(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn complex(z: Scalar) -> Value {
    Value::Array(vec![real(z.re), real(z.im)])
}

pub fn complex_list(zs: &[Scalar]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

pub fn matrix(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn matrix3(m: &Mat3) -> Value {
    Value::Array((0..3).map(|i| Value::Array((0..3).map(|j| complex(m[(i, j)])).collect())).collect())
}

pub fn multi<S: crate::exterior::Side>(x: &Multi<S>) -> Value {
    complex_list(x.coords())
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// `[re, im]` pair or a plain real number.
pub fn parse_complex(v: &Value, what: &str) -> Result<Scalar> {
    let num = |x: &Value| {
        x.as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| Error::Invalid(format!("{what}: expected a finite number, got {x}")))
    };
    match v {
        Value::Number(_) => Ok(c(num(v)?)),
        Value::Array(parts) if parts.len() == 2 => Ok(Scalar::new(num(&parts[0])?, num(&parts[1])?)),
        _ => Err(Error::Invalid(format!("{what}: expected [re, im] or a number, got {v}"))),
    }
}

pub fn parse_list(v: &Value, len: usize, what: &str) -> Result<Vec<Scalar>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("{what}: expected an array of {len} numbers")))?;
    if items.len() != len {
        return Err(Error::Invalid(format!("{what}: expected {len} entries, got {}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| parse_complex(x, &format!("{what}[{i}]")))
        .collect()
}

/// Row-major `rows × cols` matrix given as an array of rows.
pub fn parse_matrix(v: &Value, rows: usize, cols: usize, what: &str) -> Result<CMat> {
    let r = v
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("{what}: expected {rows} rows")))?;
    if r.len() != rows {
        return Err(Error::Invalid(format!("{what}: expected {rows} rows, got {}", r.len())));
    }
    let mut m = CMat::zeros(rows, cols);
    for (i, row) in r.iter().enumerate() {
        let vals = parse_list(row, cols, &format!("{what}[{i}]"))?;
        for (j, x) in vals.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    Ok(m)
}

pub fn parse_matrix3(v: &Value, what: &str) -> Result<Mat3> {
    let m = parse_matrix(v, 3, 3, what)?;
    Ok(Mat3::from_fn(|i, j| m[(i, j)]))
}
