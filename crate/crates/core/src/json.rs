//! JSON forms of matrices, polynomials, witnesses and reports.
//!
//! Scalars are strings (`"3/4"`, `"-2"`, `"3"`), polynomials are coefficient arrays
//! with the constant term first, and matrices are
//! `{"field": "Q" | "F<p>", "entries": [[scalar, ...], ...]}`.

use serde_json::{json, Value};

use crate::classify::{describe_class, MReport, Sign};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Mat;
use crate::normal_forms::{elementary_divisors_of, frobenius_form, jordan_form};
use crate::oracle::{OracleRow, OracleSweep};
use crate::poly::{Irreducibility, Poly};
use crate::stable::StableReport;
use crate::witness::{verify_witness, Witness};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn matrix_to_json(m: &Mat) -> Value {
    let entries: Vec<Vec<String>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    json!({ "field": m.field().to_string(), "entries": entries })
}

fn scalar_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        _ => Err(parse_err(format!("expected a scalar string, got {v}"))),
    }
}

/// Reads a matrix; `expected` (from the command line) must agree with the file's
/// own field when both are present.
pub fn matrix_from_json(v: &Value, expected: Option<FieldSpec>) -> Result<Mat> {
    let file_field = match v.get("field") {
        Some(Value::String(s)) => Some(s.parse::<FieldSpec>()?),
        Some(other) => return Err(parse_err(format!("field must be a string, got {other}"))),
        None => None,
    };
    let field = match (file_field, expected) {
        (Some(a), Some(b)) if a != b => return Err(Error::FieldMismatch(a, b)),
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(parse_err("no field given")),
    };
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"entries\" array"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("each row must be an array"))?
                .iter()
                .map(|x| field.parse_scalar(&scalar_string(x)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(field, rows)
}

pub fn poly_to_json(p: &Poly) -> Value {
    json!(p.to_strings())
}

pub fn poly_from_json(v: &Value, field: FieldSpec) -> Result<Poly> {
    let coeffs = v
        .as_array()
        .ok_or_else(|| parse_err("polynomial must be an array"))?
        .iter()
        .map(scalar_string)
        .collect::<Result<Vec<_>>>()?;
    Poly::parse_coeffs(field, &coeffs)
}

fn polys(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(poly_to_json).collect())
}

pub fn witness_to_json(w: &Witness) -> Value {
    let signs: Vec<Sign> = w.signs();
    let conj: Vec<Value> = w.factors.iter().map(|(_, h)| matrix_to_json(h)).collect();
    json!({
        "signs": signs,
        "conjugators": conj,
        "verified": verify_witness(w),
        "case": w.case,
        "construction": w.construction,
    })
}

/// Rebuilds a witness on `sigma`; the stored `verified` flag is ignored.
pub fn witness_from_json(v: &Value, sigma: &Mat) -> Result<Witness> {
    let signs = v
        .get("signs")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"signs\" array"))?;
    let conj = v
        .get("conjugators")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"conjugators\" array"))?;
    if signs.len() != conj.len() {
        return Err(parse_err("signs and conjugators differ in length"));
    }
    let factors = signs
        .iter()
        .zip(conj)
        .map(|(s, c)| {
            let s = match s.as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(parse_err(format!("sign must be 1 or -1, got {s}"))),
            };
            Ok((s, matrix_from_json(c, Some(sigma.field()))?))
        })
        .collect::<Result<Vec<_>>>()?;
    let text = |k: &str| v.get(k).and_then(Value::as_str).unwrap_or_default().to_string();
    Ok(Witness {
        sigma: sigma.clone(),
        factors,
        case: text("case"),
        construction: text("construction"),
    })
}

pub fn mreport_to_json(r: &MReport) -> Value {
    serde_json::to_value(r).expect("plain data")
}

fn irreducibility_json(i: &Irreducibility) -> Value {
    match i {
        Irreducibility::Irreducible => json!({ "status": "irreducible" }),
        Irreducibility::Reducible(f) => json!({ "status": "reducible", "factor": poly_to_json(f) }),
        Irreducibility::Unknown => json!({ "status": "unknown" }),
    }
}

/// Normal-form report: invariant factors, Frobenius form and transform, elementary
/// divisors and Jordan form where the factorization is available.
pub fn analyze_report(sigma: &Mat) -> Result<Value> {
    let fd = frobenius_form(sigma)?;
    let charpoly = fd
        .invariant_factors
        .iter()
        .fold(Poly::one(sigma.field()), |acc, p| &acc * p);
    let mut out = json!({
        "field": sigma.field().to_string(),
        "n": sigma.n(),
        "det": sigma.det().to_string(),
        "trace": sigma.trace().to_string(),
        "charpoly": poly_to_json(&charpoly),
        "charpoly_text": charpoly.to_string(),
        "invariant_factors": polys(&fd.invariant_factors),
        "frobenius_form": matrix_to_json(&fd.form),
        "frobenius_transform": matrix_to_json(&fd.transform),
        "roots": charpoly.roots()?.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "irreducibility": irreducibility_json(&charpoly.irreducibility()?),
    });
    let obj = out.as_object_mut().expect("object");
    match elementary_divisors_of(&fd.invariant_factors) {
        Ok(ed) => {
            let ed: Vec<Value> = ed
                .iter()
                .map(|(p, q)| json!({ "irreducible": poly_to_json(p), "power": q }))
                .collect();
            obj.insert("elementary_divisors".into(), Value::Array(ed));
            let jd = jordan_form(sigma)?;
            obj.insert("jordan_form".into(), matrix_to_json(&jd.form));
            obj.insert("jordan_transform".into(), matrix_to_json(&jd.transform));
        }
        Err(Error::FactorizationUnavailable(why)) => {
            obj.insert("elementary_divisors".into(), Value::Null);
            obj.insert("factorization_unavailable".into(), json!(why));
        }
        Err(e) => return Err(e),
    }
    if sigma.n() >= 3 && !sigma.is_scalar() && !sigma.det().is_zero() {
        let cd = describe_class(sigma)?;
        obj.insert("is_transvection_class".into(), json!(cd.is_transvection_class));
    }
    Ok(out)
}

pub fn stable_report_to_json(r: &StableReport) -> Value {
    json!({
        "stable_invariant_factors": polys(&r.frobenius.invariant_factors),
        "n_min": r.n_min,
        "stabilization_index": r.frobenius.stabilization_index,
        "report": mreport_to_json(&r.report),
        "witness_dimension": r.witness.sigma.n(),
        "witness_matrix": matrix_to_json(&r.witness.sigma),
        "witness": witness_to_json(&r.witness),
    })
}

fn pattern_text(p: &[Sign]) -> String {
    let s: Vec<&str> = p.iter().map(|&x| if x == 1 { "+" } else { "-" }).collect();
    format!("({})", s.join(","))
}

fn verdict_text(r: &MReport) -> String {
    match &r.verdict {
        crate::classify::Verdict::Exact { m, sign_pattern } => {
            format!("Exact({m}) {}", pattern_text(sign_pattern))
        }
        crate::classify::Verdict::Bounds { lower, upper, .. } => format!("Bounds[{lower},{upper}]"),
    }
}

fn row_to_json(r: &OracleRow) -> Value {
    json!({
        "class_id": r.class_id,
        "representative": matrix_to_json(&r.representative),
        "charpoly": poly_to_json(&r.charpoly),
        "charpoly_text": r.charpoly.to_string(),
        "gl_class": polys(&r.invariant_factors),
        "det": r.det.to_string(),
        "class_size": r.class_size,
        "m_min": r.verdict.m_min,
        "realizing_patterns": r.verdict.realizing_patterns,
        "classifier": mreport_to_json(&r.classifier),
        "agreement": r.agreement,
    })
}

pub fn oracle_to_json(s: &OracleSweep) -> Value {
    json!({
        "field": s.field.to_string(),
        "n": s.n,
        "group_order": s.group_order,
        "class_count": s.class_count,
        "rows": s.rows.iter().map(row_to_json).collect::<Vec<_>>(),
        "observations": s.observations.iter().map(row_to_json).collect::<Vec<_>>(),
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header:
/// `class_id,representative,charpoly,gl_class,det,class_size,m_min,realizing_patterns,classifier,agreement,observation`.
pub fn oracle_to_csv(s: &OracleSweep) -> String {
    let mut out = String::from(
        "class_id,representative,charpoly,gl_class,det,class_size,m_min,realizing_patterns,classifier,agreement,observation\n",
    );
    for r in &s.rows {
        let rep: Vec<String> = r
            .representative
            .rows()
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        let gl: Vec<String> = r.invariant_factors.iter().map(|p| format!("[{p}]")).collect();
        let pats: Vec<String> = r.verdict.realizing_patterns.iter().map(|p| pattern_text(p)).collect();
        let obs = matches!(r.classifier.verdict, crate::classify::Verdict::Bounds { .. });
        let cells = [
            r.class_id.to_string(),
            rep.join(";"),
            r.charpoly.to_string(),
            gl.join(""),
            r.det.to_string(),
            r.class_size.to_string(),
            r.verdict.m_min.to_string(),
            pats.join(" "),
            verdict_text(&r.classifier),
            r.agreement.to_string(),
            obs.to_string(),
        ];
        let line: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
