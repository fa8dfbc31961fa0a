//! Wire formats: the JSON schema for ring elements, coefficient-list
//! polynomial text, comma-separated integer vectors, and cyclotomic value
//! vectors.  All decoders are total on arbitrary input (they return errors,
//! never panic) and re-canonicalize what they accept.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycInt;
use crate::ffpoly::{FFPoly, Fq};
use crate::gauss::GaussElement;
use crate::Error;

/// JSON form of one monomial: `{"coeff": c, "q": e, "g": {"t": exp, ...}}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: i64,
    pub q: i64,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub g: std::collections::BTreeMap<u32, u32>,
}

/// JSON form of a ring element: `{"n": n, "terms": [...]}` with the terms
/// sorted by `(q, g)`; serialization is bit-exact across runs.
#[derive(Debug, Serialize, Deserialize)]
pub struct GaussElementJson {
    pub n: u32,
    pub terms: Vec<TermJson>,
}

pub fn gauss_to_json(e: &GaussElement) -> GaussElementJson {
    GaussElementJson {
        n: e.n(),
        terms: e
            .terms()
            .map(|(m, c)| TermJson { coeff: c, q: m.q_exp(), g: m.g_exps().clone() })
            .collect(),
    }
}

pub fn gauss_to_json_string(e: &GaussElement) -> String {
    serde_json::to_string(&gauss_to_json(e)).expect("serialization cannot fail")
}

/// Decode and re-canonicalize a ring element; rejects `n = 0` and symbol
/// indices divisible by `n`.
pub fn gauss_from_json(j: &GaussElementJson) -> Result<GaussElement, Error> {
    if j.n == 0 {
        return Err(Error::Parse("cover degree n must be positive".into()));
    }
    let mut acc = GaussElement::zero(j.n);
    for t in &j.terms {
        let raw: Vec<(i64, u32)> = t.g.iter().map(|(&k, &v)| (k as i64, v)).collect();
        let m = GaussElement::monomial(j.n, t.coeff, t.q, raw)?;
        acc.add_assign(&m);
    }
    Ok(acc)
}

pub fn gauss_from_json_str(s: &str) -> Result<GaussElement, Error> {
    let j: GaussElementJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad element JSON: {e}")))?;
    gauss_from_json(&j)
}

/// Parse a polynomial as a coefficient list, low to high, over `F_q`:
/// `"[3,0,1]"` or `"3,0,1"` both denote `t^2 + 3`.  Negative entries are
/// reduced mod `q`; an empty list is the zero polynomial.
pub fn parse_poly(s: &str, fq: &Fq) -> Result<FFPoly, Error> {
    let body = s.trim();
    let body = body.strip_prefix('[').unwrap_or(body);
    let body = body.strip_suffix(']').unwrap_or(body);
    let body = body.trim();
    if body.is_empty() {
        return Ok(FFPoly::zero());
    }
    let mut coeffs = Vec::new();
    for part in body.split(',') {
        let v: i64 = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {part:?}")))?;
        coeffs.push(v.rem_euclid(fq.q as i64) as u32);
    }
    if coeffs.len() > 4096 {
        return Err(Error::Parse("polynomial degree too large".into()));
    }
    Ok(FFPoly::from_coeffs(coeffs))
}

pub fn poly_to_string(p: &FFPoly) -> String {
    let inner = p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    format!("[{inner}]")
}

/// Parse a comma-separated vector of non-negative integers (`"0,1,2"`).
pub fn parse_uint_list(s: &str) -> Result<Vec<u32>, Error> {
    let body = s.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in body.split(',') {
        let v: u32 = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {part:?}")))?;
        out.push(v);
    }
    if out.len() > 64 {
        return Err(Error::Parse("vector too long".into()));
    }
    Ok(out)
}

/// Serialized cyclotomic value: basis coefficients with the modulus.
#[derive(Debug, Serialize, Deserialize)]
pub struct CycJson {
    pub modulus: u32,
    pub coeffs: Vec<String>,
}

pub fn cyc_to_json(v: &CycInt, modulus: u32) -> CycJson {
    CycJson { modulus, coeffs: v.coeffs().iter().map(|c| c.to_string()).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_roundtrip() {
        let e = GaussElement::monomial(3, 2, 1, [(1, 2)])
            .unwrap()
            .add(&GaussElement::from_int(3, -5));
        let s = gauss_to_json_string(&e);
        let back = gauss_from_json_str(&s).unwrap();
        assert_eq!(e, back);
        // deterministic bytes
        assert_eq!(s, gauss_to_json_string(&back));
    }

    #[test]
    fn json_decoder_rejects_garbage() {
        assert!(gauss_from_json_str("{").is_err());
        assert!(gauss_from_json_str(r#"{"n":0,"terms":[]}"#).is_err());
        // index divisible by n is rejected, not normalized away
        assert!(gauss_from_json_str(r#"{"n":3,"terms":[{"coeff":1,"q":0,"g":{"3":1}}]}"#).is_err());
    }

    #[test]
    fn json_decoder_canonicalizes() {
        // g_1 * g_2 collapses to q at n = 3
        let e = gauss_from_json_str(r#"{"n":3,"terms":[{"coeff":1,"q":0,"g":{"1":1,"2":1}}]}"#)
            .unwrap();
        assert_eq!(e, GaussElement::q_pow(3, 1));
    }

    #[test]
    fn poly_text_roundtrip() {
        let fq = Fq::new(13);
        let p = parse_poly("[3,0,1]", &fq).unwrap();
        assert_eq!(p.coeffs(), &[3, 0, 1]);
        assert_eq!(parse_poly("3, 0, 1", &fq).unwrap(), p);
        assert_eq!(poly_to_string(&p), "[3,0,1]");
        // reduction and trailing zeros
        assert_eq!(parse_poly("[-1,13]", &fq).unwrap().coeffs(), &[12]);
        assert!(parse_poly("[1,x]", &fq).is_err());
        assert!(parse_poly("", &fq).unwrap().is_zero());
    }

    #[test]
    fn uint_list() {
        assert_eq!(parse_uint_list("0,1,2").unwrap(), vec![0, 1, 2]);
        assert!(parse_uint_list("1,-2").is_err());
        assert!(parse_uint_list("").unwrap().is_empty());
    }
}
