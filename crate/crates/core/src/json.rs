//! JSON encodings of scalars, polynomials, spectra, jets, paths and covers.
//!
//! Exact scalars are integers or `"p/q"` strings; floating scalars are JSON
//! numbers (strings are accepted too). A polynomial is
//! `{"m": 2, "terms": [{"exp": [1, 0], "coef": "3/4"}]}`. Paths put `t` in
//! the last exponent slot, or in a separate `"t"` field of each term.

use serde_json::{json, Map, Value};

use crate::hermite::{MultiJet, WeightedSpectrum};
use crate::jet::Jet;
use crate::poly::Polynomial;
use crate::resolution::{DeltaComplex, Monodromy};
use crate::scalar::{parse_rational, Scalar};

/// A schema violation located by a JSON pointer.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {}",
            if self.pointer.is_empty() { "/" } else { &self.pointer },
            self.message
        )
    }
}

pub type Parsed<T> = std::result::Result<T, SchemaError>;

pub fn schema_error(pointer: &str, message: impl Into<String>) -> SchemaError {
    SchemaError {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

fn child(pointer: &str, key: impl std::fmt::Display) -> String {
    format!("{pointer}/{key}")
}

pub fn field<'a>(v: &'a Value, pointer: &str, key: &str) -> Parsed<&'a Value> {
    v.get(key)
        .ok_or_else(|| schema_error(pointer, format!("missing field \"{key}\"")))
}

pub fn array<'a>(v: &'a Value, pointer: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema_error(pointer, "expected an array"))
}

pub fn usize_value(v: &Value, pointer: &str) -> Parsed<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema_error(pointer, "expected a non-negative integer"))
}

pub fn f64_value(v: &Value, pointer: &str) -> Parsed<f64> {
    v.as_f64().ok_or_else(|| schema_error(pointer, "expected a number"))
}

pub fn str_value<'a>(v: &'a Value, pointer: &str) -> Parsed<&'a str> {
    v.as_str().ok_or_else(|| schema_error(pointer, "expected a string"))
}

pub fn scalar<S: Scalar>(v: &Value, pointer: &str) -> Parsed<S> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(S::from_i64(n.as_i64().unwrap())),
        Value::Number(n) => {
            if S::is_exact() {
                Err(schema_error(
                    pointer,
                    "the exact profile takes integers or \"p/q\" strings, not floating numbers",
                ))
            } else {
                Ok(S::from_f64(n.as_f64().unwrap()))
            }
        }
        Value::String(s) => parse_rational(s)
            .map(|r| S::from_rational(&r))
            .ok_or_else(|| schema_error(pointer, format!("\"{s}\" is not a rational number"))),
        _ => Err(schema_error(pointer, "expected a number or a \"p/q\" string")),
    }
}

pub fn scalar_json<S: Scalar>(s: &S) -> Value {
    if S::is_exact() {
        Value::String(s.to_string())
    } else {
        json!(s.to_f64())
    }
}

pub fn vector<S: Scalar>(v: &Value, pointer: &str) -> Parsed<Vec<S>> {
    array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(x, &child(pointer, i)))
        .collect()
}

pub fn vector_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn exponent(v: &Value, pointer: &str) -> Parsed<Vec<u32>> {
    array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .filter(|&k| k <= u32::MAX as u64)
                .map(|k| k as u32)
                .ok_or_else(|| schema_error(&child(pointer, i), "expected a non-negative integer exponent"))
        })
        .collect()
}

/// A polynomial in `m` variables; with `time` set, terms carry one more
/// exponent for `t`, given inline or as a `"t"` field.
fn polynomial_with<S: Scalar>(v: &Value, pointer: &str, time: bool) -> Parsed<Polynomial<S>> {
    let m = usize_value(field(v, pointer, "m")?, &child(pointer, "m"))?;
    let nvars = m + time as usize;
    let terms_ptr = child(pointer, "terms");
    let mut terms = Vec::new();
    for (i, term) in array(field(v, pointer, "terms")?, &terms_ptr)?.iter().enumerate() {
        let tp = child(&terms_ptr, i);
        let mut e = exponent(field(term, &tp, "exp")?, &child(&tp, "exp"))?;
        if time && e.len() == m {
            let t = term.get("t").map_or(Ok(0), |t| usize_value(t, &child(&tp, "t")))?;
            e.push(t as u32);
        }
        if e.len() != nvars {
            return Err(schema_error(
                &child(&tp, "exp"),
                format!("expected {nvars} exponents, found {}", e.len()),
            ));
        }
        let c = scalar(field(term, &tp, "coef")?, &child(&tp, "coef"))?;
        terms.push((e, c));
    }
    Polynomial::from_terms(nvars, terms).map_err(|e| schema_error(pointer, e.to_string()))
}

pub fn polynomial<S: Scalar>(v: &Value, pointer: &str) -> Parsed<Polynomial<S>> {
    polynomial_with(v, pointer, false)
}

pub fn path_polynomial<S: Scalar>(v: &Value, pointer: &str) -> Parsed<Polynomial<S>> {
    polynomial_with(v, pointer, true)
}

pub fn polynomial_json<S: Scalar>(p: &Polynomial<S>) -> Value {
    json!({
        "m": p.nvars(),
        "terms": p.terms().map(|(e, c)| json!({"exp": e, "coef": scalar_json(c)})).collect::<Vec<_>>(),
    })
}

/// A path polynomial with `t` split out of each term.
pub fn path_json<S: Scalar>(p: &Polynomial<S>) -> Value {
    let m = p.nvars() - 1;
    json!({
        "m": m,
        "terms": p
            .terms()
            .map(|(e, c)| json!({"exp": &e[..m], "t": e[m], "coef": scalar_json(c)}))
            .collect::<Vec<_>>(),
    })
}

/// `[{"point": [..], "weight": k}, ...]`.
pub fn spectrum<S: Scalar>(v: &Value, pointer: &str) -> Parsed<WeightedSpectrum<S>> {
    let mut points = Vec::new();
    for (i, entry) in array(v, pointer)?.iter().enumerate() {
        let ep = child(pointer, i);
        let y = vector(field(entry, &ep, "point")?, &child(&ep, "point"))?;
        let k = entry
            .get("weight")
            .map_or(Ok(1), |w| usize_value(w, &child(&ep, "weight")))?;
        points.push((y, k as u32));
    }
    WeightedSpectrum::new(points).map_err(|e| schema_error(pointer, e.to_string()))
}

pub fn spectrum_json<S: Scalar>(y: &WeightedSpectrum<S>) -> Value {
    Value::Array(
        y.points()
            .iter()
            .map(|(p, k)| json!({"point": vector_json(p), "weight": k}))
            .collect(),
    )
}

/// A jet: `{"base": [..], "order": k, "local": polynomial}` with the local
/// polynomial in the displacement from the base.
pub fn jet<S: Scalar>(v: &Value, pointer: &str) -> Parsed<Jet<S>> {
    let base = vector(field(v, pointer, "base")?, &child(pointer, "base"))?;
    let order = usize_value(field(v, pointer, "order")?, &child(pointer, "order"))? as u32;
    let local = polynomial(field(v, pointer, "local")?, &child(pointer, "local"))?;
    Jet::from_local(base, order, local).map_err(|e| schema_error(pointer, e.to_string()))
}

pub fn jet_json<S: Scalar>(j: &Jet<S>) -> Value {
    json!({"base": vector_json(j.base()), "order": j.order(), "local": polynomial_json(j.local())})
}

pub fn multi_jet<S: Scalar>(v: &Value, pointer: &str, y: &WeightedSpectrum<S>) -> Parsed<MultiJet<S>> {
    let jets = array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(i, j)| jet(j, &child(pointer, i)))
        .collect::<Parsed<Vec<_>>>()?;
    MultiJet::new(y, jets).map_err(|e| schema_error(pointer, e.to_string()))
}

/// `{"vertices": n, "edges": [[from, to], ..], "triangles": [[e0, e1, e2], ..]}`.
pub fn delta_complex(v: &Value, pointer: &str) -> Parsed<DeltaComplex> {
    let vertices = usize_value(field(v, pointer, "vertices")?, &child(pointer, "vertices"))?;
    let pairs = |key: &str| -> Parsed<Vec<Vec<usize>>> {
        let kp = child(pointer, key);
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(list) => array(list, &kp)?
                .iter()
                .enumerate()
                .map(|(i, cell)| {
                    let cp = child(&kp, i);
                    array(cell, &cp)?
                        .iter()
                        .enumerate()
                        .map(|(j, x)| usize_value(x, &child(&cp, j)))
                        .collect()
                })
                .collect(),
        }
    };
    let edges = pairs("edges")?;
    let triangles = pairs("triangles")?;
    let fixed = |cells: Vec<Vec<usize>>, n: usize, key: &str| -> Parsed<Vec<Vec<usize>>> {
        for (i, c) in cells.iter().enumerate() {
            if c.len() != n {
                return Err(schema_error(
                    &child(&child(pointer, key), i),
                    format!("expected {n} entries"),
                ));
            }
        }
        Ok(cells)
    };
    let edges = fixed(edges, 2, "edges")?.into_iter().map(|c| [c[0], c[1]]).collect();
    let triangles = fixed(triangles, 3, "triangles")?
        .into_iter()
        .map(|c| [c[0], c[1], c[2]])
        .collect();
    DeltaComplex::new(vertices, edges, triangles).map_err(|e| schema_error(pointer, e.to_string()))
}

pub fn delta_complex_json(c: &DeltaComplex) -> Value {
    json!({
        "vertices": c.cell_count(0),
        "edges": c.edges(),
        "triangles": c.triangles(),
    })
}

/// `{"degree": n, "permutations": [[..], ..]}` with sheets numbered from 1.
pub fn monodromy(v: &Value, pointer: &str, base: &DeltaComplex) -> Parsed<Monodromy> {
    let degree = usize_value(field(v, pointer, "degree")?, &child(pointer, "degree"))?;
    let pp = child(pointer, "permutations");
    let mut perms = Vec::new();
    for (i, perm) in array(field(v, pointer, "permutations")?, &pp)?.iter().enumerate() {
        let ep = child(&pp, i);
        let mut out = Vec::new();
        for (j, x) in array(perm, &ep)?.iter().enumerate() {
            let s = usize_value(x, &child(&ep, j))?;
            if s == 0 {
                return Err(schema_error(&child(&ep, j), "sheets are numbered from 1"));
            }
            out.push(s - 1);
        }
        perms.push(out);
    }
    Monodromy::new(base, degree, perms).map_err(|e| schema_error(pointer, e.to_string()))
}

pub fn monodromy_json(mono: &Monodromy, edges: usize) -> Value {
    json!({
        "degree": mono.degree(),
        "permutations": (0..edges)
            .map(|e| mono.perm(e).iter().map(|s| s + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn polynomial_round_trip() {
        let v = json!({"m": 2, "terms": [{"exp": [1, 0], "coef": "3/4"}, {"exp": [0, 2], "coef": -2}]});
        let p: Polynomial<Rational> = polynomial(&v, "").unwrap();
        assert_eq!(polynomial::<Rational>(&polynomial_json(&p), "").unwrap(), p);
        let e = polynomial::<Rational>(&json!({"m": 2, "terms": [{"exp": [1], "coef": 1}]}), "/f").unwrap_err();
        assert_eq!(e.pointer, "/f/terms/0/exp");
        let e = polynomial::<Rational>(&json!({"m": 1, "terms": [{"exp": [1], "coef": 0.5}]}), "").unwrap_err();
        assert_eq!(e.pointer, "/terms/0/coef");
        assert!(polynomial::<f64>(&json!({"m": 1, "terms": [{"exp": [1], "coef": 0.5}]}), "").is_ok());
    }

    #[test]
    fn path_terms_accept_a_t_field() {
        let v = json!({"m": 1, "terms": [{"exp": [1], "t": 2, "coef": 1}, {"exp": [0, 1], "coef": 1}]});
        let p: Polynomial<Rational> = path_polynomial(&v, "").unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(path_polynomial::<Rational>(&path_json(&p), "").unwrap(), p);
    }

    #[test]
    fn monodromy_is_one_based() {
        let base = DeltaComplex::new(1, vec![[0, 0]], vec![]).unwrap();
        let mono = monodromy(&json!({"degree": 2, "permutations": [[2, 1]]}), "", &base).unwrap();
        assert_eq!(mono.perm(0), &[1, 0]);
        assert_eq!(monodromy_json(&mono, 1), json!({"degree": 2, "permutations": [[2, 1]]}));
    }
}
