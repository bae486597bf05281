//! File formats: operator matrices as JSON or CSV, reports as JSON lines.
//!
//! Floats are written in shortest round-trip form and read back with
//! correct rounding, so every finite entry survives a round trip bit for
//! bit. Non-finite values become `null` in JSON.

use std::io::{Read, Write};

use bergman::toeplitz::OperatorMatrix;
use bergman::verify::{Param, VerificationReport};
use bergman::{MultiIndex, SpaceParams, C64};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug)]
pub enum IoError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
    Model(bergman::Error),
    Format(String),
}

impl std::fmt::Display for IoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IoError::Io(e) => write!(f, "{e}"),
            IoError::Json(e) => write!(f, "JSON: {e}"),
            IoError::Csv(e) => write!(f, "CSV: {e}"),
            IoError::Model(e) => write!(f, "{e}"),
            IoError::Format(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for IoError {}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e)
    }
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e)
    }
}

impl From<csv::Error> for IoError {
    fn from(e: csv::Error) -> Self {
        IoError::Csv(e)
    }
}

impl From<bergman::Error> for IoError {
    fn from(e: bergman::Error) -> Self {
        IoError::Model(e)
    }
}

/// JSON layout of an [`OperatorMatrix`]; `entries` is row-major.
#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    d: usize,
    lambda: f64,
    n: usize,
    #[serde(rename = "M")]
    degree: usize,
    basis: Vec<Vec<u32>>,
    entries: Vec<[f64; 2]>,
}

pub fn write_matrix_json<W: Write>(m: &OperatorMatrix, mut out: W) -> Result<(), IoError> {
    let p = m.params();
    let doc = MatrixDoc {
        d: p.d(),
        lambda: p.lambda(),
        n: p.n(),
        degree: m.degree(),
        basis: m.basis().iter().map(|b| b.entries().to_vec()).collect(),
        entries: m.entries().iter().map(|c| [c.re, c.im]).collect(),
    };
    serde_json::to_writer(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_matrix_json<R: Read>(input: R) -> Result<OperatorMatrix, IoError> {
    let doc: MatrixDoc = serde_json::from_reader(input)?;
    let params = SpaceParams::new(doc.d, doc.lambda)?.with_order(doc.n)?;
    let basis = doc.basis.into_iter().map(MultiIndex::new).collect();
    let entries = doc.entries.into_iter().map(|[re, im]| C64::new(re, im)).collect();
    Ok(OperatorMatrix::from_parts(params, doc.degree, basis, entries)?)
}

#[derive(Serialize, Deserialize)]
struct CsvEntry {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

/// One `row,col,re,im` record per entry, row-major.
pub fn write_matrix_csv<W: Write>(m: &OperatorMatrix, out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    let dim = m.dim();
    for row in 0..dim {
        for col in 0..dim {
            let c = m.get(row, col);
            w.serialize(CsvEntry { row, col, re: c.re, im: c.im })?;
        }
    }
    w.flush()?;
    Ok(())
}

/// The CSV form carries only entries, so the space and degree are supplied.
pub fn read_matrix_csv<R: Read>(input: R, params: SpaceParams, degree: usize) -> Result<OperatorMatrix, IoError> {
    let mut m = OperatorMatrix::zeros(params, degree);
    let dim = m.dim();
    let mut seen = vec![false; dim * dim];
    for record in csv::Reader::from_reader(input).deserialize() {
        let e: CsvEntry = record?;
        if e.row >= dim || e.col >= dim {
            return Err(IoError::Format(format!("entry ({}, {}) outside a {dim}x{dim} matrix", e.row, e.col)));
        }
        seen[e.row * dim + e.col] = true;
        m.set(e.row, e.col, C64::new(e.re, e.im));
    }
    if seen.iter().any(|s| !s) {
        return Err(IoError::Format("CSV does not list every entry".into()));
    }
    Ok(m)
}

fn param_value(p: &Param) -> Value {
    match p {
        Param::Real(v) => Value::from(*v),
        Param::Int(v) => Value::from(*v),
        Param::Text(s) => Value::from(s.as_str()),
    }
}

fn complex_value(c: C64) -> Value {
    Value::from(vec![Value::from(c.re), Value::from(c.im)])
}

/// A report as a JSON object.
pub fn report_json(r: &VerificationReport) -> Value {
    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), param_value(v))).collect();
    let mut obj = Map::new();
    obj.insert("identity_id".into(), Value::from(r.identity_id.as_str()));
    obj.insert("params".into(), Value::Object(params));
    obj.insert("lhs".into(), complex_value(r.lhs));
    obj.insert("rhs".into(), complex_value(r.rhs));
    obj.insert("abs_err".into(), Value::from(r.abs_err));
    obj.insert("rel_err".into(), Value::from(r.rel_err));
    obj.insert("tolerance".into(), Value::from(r.tolerance));
    obj.insert("policy".into(), Value::from(r.policy.to_string()));
    obj.insert("pass".into(), Value::from(r.pass));
    obj.insert("inconclusive".into(), Value::from(r.inconclusive));
    obj.insert("seed".into(), r.seed.map_or(Value::Null, Value::from));
    if !r.series.is_empty() {
        obj.insert("series".into(), Value::from(r.series.clone()));
    }
    obj.insert("notes".into(), Value::from(r.notes.as_str()));
    Value::Object(obj)
}

/// One JSON object per line.
pub fn write_reports_jsonl<W: Write>(reports: &[VerificationReport], mut out: W) -> Result<(), IoError> {
    for r in reports {
        serde_json::to_writer(&mut out, &report_json(r))?;
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bergman::toeplitz::toeplitz_poly_matrix;
    use bergman::MixedPoly;

    fn sample() -> OperatorMatrix {
        let p = SpaceParams::new(2, 0.7).unwrap().with_order(2).unwrap();
        let phi = MixedPoly::one(2).sub(&MixedPoly::abs2(2)).scale(C64::new(1.0 / 3.0, 0.1));
        toeplitz_poly_matrix(&phi, &p, 3)
    }

    #[test]
    fn json_round_trip_is_exact() {
        let m = sample();
        let mut buf = Vec::new();
        write_matrix_json(&m, &mut buf).unwrap();
        let back = read_matrix_json(buf.as_slice()).unwrap();
        assert_eq!(back, m);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("{\"d\":2,\"lambda\":0.7,\"n\":2,\"M\":3,"));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let m = sample();
        let mut buf = Vec::new();
        write_matrix_csv(&m, &mut buf).unwrap();
        assert!(buf.starts_with(b"row,col,re,im\n"));
        let back = read_matrix_csv(buf.as_slice(), *m.params(), m.degree()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn csv_must_be_complete() {
        let p = SpaceParams::new(1, 2.0).unwrap();
        assert!(read_matrix_csv("row,col,re,im\n0,0,1,0\n".as_bytes(), p, 1).is_err());
    }
}
