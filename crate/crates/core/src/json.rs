//! Wire formats for Clifford elements, spin vectors and scalars.
//!
//! Exact scalars travel as `"a": ["p", "q"], "b": ["p", "q"]` for
//! `p/q + (p'/q')√2`; float scalars as `"c": number`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::CliffordElement;
use crate::codes::BitWord;
use crate::linalg::Matrix;
use crate::scalar::{Mode, QSqrt2, Rational, Scalar};
use crate::spinmod::{Parity, SpinVector};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid content: {0}")]
    Invalid(String),
}

/// Parses text, keeping syntax errors apart from content errors.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, JsonError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    serde_json::from_value(value).map_err(|e| JsonError::Invalid(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Exact {
        a: (String, String),
        #[serde(default = "zero_pair")]
        b: (String, String),
    },
    Float {
        c: f64,
    },
}

fn zero_pair() -> (String, String) {
    ("0".into(), "1".into())
}

fn pair(r: &Rational) -> (String, String) {
    (r.numer_string(), r.denom_string())
}

impl ScalarJson {
    pub fn from_scalar(x: &Scalar) -> Self {
        match x {
            Scalar::Exact(q) => ScalarJson::Exact { a: pair(&q.a), b: pair(&q.b) },
            Scalar::Float(c) => ScalarJson::Float { c: *c },
        }
    }

    pub fn to_scalar(&self, mode: Mode) -> Result<Scalar, JsonError> {
        match (self, mode) {
            (ScalarJson::Exact { a, b }, Mode::Exact) => {
                let parse = |p: &(String, String)| Rational::parse(&p.0, &p.1).map_err(|e| JsonError::Invalid(e.to_string()));
                Ok(Scalar::Exact(QSqrt2::new(parse(a)?, parse(b)?)))
            }
            (ScalarJson::Float { c }, Mode::Float) => Ok(Scalar::Float(*c)),
            _ => Err(JsonError::Invalid("scalar does not match the declared mode".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaskTerm {
    pub mask: BitWord,
    #[serde(flatten)]
    pub value: ScalarJson,
}

/// `{"mode": "exact", "terms": [{"mask": "<hex6>", "a": …, "b": …}, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliffordJson {
    pub mode: Mode,
    pub terms: Vec<MaskTerm>,
}

impl CliffordJson {
    pub fn from_element(x: &CliffordElement) -> Self {
        CliffordJson {
            mode: x.mode(),
            terms: x.terms().iter().map(|(s, c)| MaskTerm { mask: *s, value: ScalarJson::from_scalar(c) }).collect(),
        }
    }

    pub fn to_element(&self) -> Result<CliffordElement, JsonError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.mask, t.value.to_scalar(self.mode)?)))
            .collect::<Result<Vec<_>, JsonError>>()?;
        CliffordElement::from_terms(self.mode, terms).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepTerm {
    pub rep: BitWord,
    #[serde(flatten)]
    pub value: ScalarJson,
}

/// `{"mode": …, "entries": [{"rep": "<hex6>", "a": …, "b": …}, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinVectorJson {
    pub mode: Mode,
    pub entries: Vec<RepTerm>,
}

impl SpinVectorJson {
    pub fn from_vector(v: &SpinVector) -> Self {
        let g = crate::codes::golay();
        SpinVectorJson {
            mode: v.mode(),
            entries: v
                .support()
                .into_iter()
                .map(|k| RepTerm { rep: g.rep(k), value: ScalarJson::from_scalar(v.entry(k)) })
                .collect(),
        }
    }

    /// Rejects vectors mixing even and odd classes.
    pub fn to_vector(&self) -> Result<SpinVector, JsonError> {
        let entries = self
            .entries
            .iter()
            .map(|t| Ok((t.rep, t.value.to_scalar(self.mode)?)))
            .collect::<Result<Vec<_>, JsonError>>()?;
        let v = SpinVector::from_entries(self.mode, entries).map_err(|e| JsonError::Invalid(e.to_string()))?;
        if v.parity() == Parity::Mixed {
            return Err(JsonError::Invalid("vector mixes even and odd classes".into()));
        }
        Ok(v)
    }
}

/// `{"mode": …, "rows": [[scalar, …], …]}` for square matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub mode: Mode,
    pub rows: Vec<Vec<ScalarJson>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixJson { mode: m.mode(), rows: m.rows().iter().map(|r| r.iter().map(ScalarJson::from_scalar).collect()).collect() }
    }

    pub fn to_matrix(&self) -> Result<Matrix, JsonError> {
        let n = self.rows.len();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(JsonError::Invalid("matrix is not square".into()));
                }
                r.iter().map(|c| c.to_scalar(self.mode)).collect()
            })
            .collect::<Result<Vec<Vec<Scalar>>, JsonError>>()?;
        if n == 0 {
            return Ok(Matrix::zeros(0, self.mode));
        }
        Matrix::from_rows(rows).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}
