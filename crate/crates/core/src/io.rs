//! JSON interchange documents for matrices, problems and systems.
//!
//! ```json
//! {"rows": 2, "cols": 1, "scalar_kind": "rational", "entries": [["1/2"], ["-3"]]}
//! ```
//!
//! Rational entries are strings (`p` or `p/q`); float entries are JSON
//! numbers. The column count is stored explicitly so `r×0` and `0×c`
//! matrices survive a round trip.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::approx::{ApproxProblem, FloatMat};
use crate::error::{Error, Result};
use crate::exact_field::{format_scalar, parse_scalar, Mat};
use crate::realization::{RealizationProblem, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Number(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub scalar_kind: ScalarKind,
    pub entries: Vec<Vec<Entry>>,
}

impl MatrixDocument {
    pub fn from_exact(m: &Mat) -> Self {
        MatrixDocument {
            rows: m.rows(),
            cols: m.cols(),
            scalar_kind: ScalarKind::Rational,
            entries: (0..m.rows())
                .map(|i| m.row(i).iter().map(|v| Entry::Text(format_scalar(v))).collect())
                .collect(),
        }
    }

    pub fn from_float(m: &FloatMat) -> Self {
        MatrixDocument {
            rows: m.rows(),
            cols: m.cols(),
            scalar_kind: ScalarKind::Float,
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| Entry::Number(m.get(i, j))).collect())
                .collect(),
        }
    }

    fn check_shape(&self, at: &str) -> Result<()> {
        if self.entries.len() != self.rows {
            return Err(Error::doc(
                format!("{at}entries"),
                format!("{} rows present, header says {}", self.entries.len(), self.rows),
            ));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(Error::doc(
                    format!("{at}entries[{i}]"),
                    format!("{} entries present, header says {} columns", row.len(), self.cols),
                ));
            }
        }
        Ok(())
    }

    /// Exact matrix; only rational documents qualify.
    pub fn to_exact(&self) -> Result<Mat> {
        self.to_exact_at("")
    }

    fn to_exact_at(&self, at: &str) -> Result<Mat> {
        self.check_shape(at)?;
        if self.scalar_kind != ScalarKind::Rational {
            return Err(Error::doc(
                format!("{at}scalar_kind"),
                "float data needs the floating-point path",
            ));
        }
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let loc = || format!("{at}entries[{i}][{j}]");
                match e {
                    Entry::Text(t) => data.push(parse_scalar(t).map_err(|err| Error::doc(loc(), err.to_string()))?),
                    Entry::Number(_) => {
                        return Err(Error::doc(loc(), "rational entries must be strings"));
                    }
                }
            }
        }
        Mat::from_vec(self.rows, self.cols, data)
    }

    /// Float matrix; rational entries are rounded to the nearest double.
    pub fn to_float(&self) -> Result<FloatMat> {
        self.to_float_at("")
    }

    fn to_float_at(&self, at: &str) -> Result<FloatMat> {
        match self.scalar_kind {
            ScalarKind::Rational => Ok(FloatMat::from_exact(&self.to_exact_at(at)?)),
            ScalarKind::Float => {
                self.check_shape(at)?;
                let mut data = Vec::with_capacity(self.rows * self.cols);
                for (i, row) in self.entries.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        match e {
                            Entry::Number(v) => data.push(*v),
                            Entry::Text(_) => {
                                return Err(Error::doc(
                                    format!("{at}entries[{i}][{j}]"),
                                    "float entries must be numbers",
                                ));
                            }
                        }
                    }
                }
                FloatMat::new(self.rows, self.cols, data)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(rename = "V")]
    pub v: MatrixDocument,
    #[serde(rename = "W")]
    pub w: MatrixDocument,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub m: usize,
}

impl ProblemDocument {
    pub fn from_problem(prob: &RealizationProblem) -> Self {
        ProblemDocument {
            v: MatrixDocument::from_exact(prob.v()),
            w: MatrixDocument::from_exact(prob.w()),
            p: prob.p(),
            q: prob.q(),
            k: prob.k(),
            m: prob.m(),
        }
    }

    fn check_kinds(&self) -> Result<()> {
        if self.v.scalar_kind != self.w.scalar_kind {
            return Err(Error::doc("W.scalar_kind", "V and W must share a scalar kind"));
        }
        Ok(())
    }

    pub fn to_exact(&self) -> Result<RealizationProblem> {
        self.check_kinds()?;
        RealizationProblem::new(
            self.v.to_exact_at("V.")?,
            self.w.to_exact_at("W.")?,
            self.p,
            self.q,
            self.k,
            self.m,
        )
    }

    pub fn to_float(&self) -> Result<ApproxProblem> {
        self.check_kinds()?;
        ApproxProblem::new(
            self.v.to_float_at("V.")?,
            self.w.to_float_at("W.")?,
            self.p,
            self.q,
            self.k,
            self.m,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    #[serde(rename = "A")]
    pub a: MatrixDocument,
    #[serde(rename = "B")]
    pub b: MatrixDocument,
    #[serde(rename = "C")]
    pub c: MatrixDocument,
}

impl SystemDocument {
    pub fn from_triple(t: &Triple) -> Self {
        SystemDocument {
            a: MatrixDocument::from_exact(&t.a),
            b: MatrixDocument::from_exact(&t.b),
            c: MatrixDocument::from_exact(&t.c),
        }
    }

    pub fn to_triple(&self) -> Result<Triple> {
        Triple::new(
            self.a.to_exact_at("A.")?,
            self.b.to_exact_at("B.")?,
            self.c.to_exact_at("C.")?,
        )
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::doc(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn parse_matrix(text: &str) -> Result<MatrixDocument> {
    let doc: MatrixDocument = parse_json(text)?;
    doc.check_shape("")?;
    Ok(doc)
}

pub fn parse_problem(text: &str) -> Result<ProblemDocument> {
    let doc: ProblemDocument = parse_json(text)?;
    doc.v.check_shape("V.")?;
    doc.w.check_shape("W.")?;
    Ok(doc)
}

pub fn parse_system(text: &str) -> Result<SystemDocument> {
    parse_json(text)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn serialize_matrix(doc: &MatrixDocument) -> String {
    to_json(doc)
}

/// SHA-256 over the given inputs, each prefixed by its byte length.
pub fn input_hash<'a>(inputs: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}
