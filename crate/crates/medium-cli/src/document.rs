//! JSON tensor documents.
//!
//! A document carries a (2,2)-tensor either as `matrix6`, 36 entries row-major
//! in the basis `O = {01, 02, 03, 23, 31, 12}` (row = output bivector, column =
//! input bivector), or as `components`, a list of `{i, j, k, l, value}` giving
//! `κ^{ij}_{kl}`. Entries are JSON numbers or exact objects
//! `{"num", "den"}` / `{"num", "den", "root2_num", "root2_den"}`.
//! Unknown top-level keys are ignored, so reports can be fed back in.

use std::collections::BTreeMap;

use medium_exact::{parse_rational, ExactEntry, Field, Mat, QSqrt2, Rational};
use medium_exterior::BivectorIndex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("conflicting components {first} and {second}")]
    Conflict { first: String, second: String },
    #[error("non-finite number in {0}")]
    NonFinite(String),
}

/// A single entry as written in a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(serde_json::Number),
    Exact(ExactEntry),
}

/// Parsed value of a [`Number`]: the double, the exact value when the
/// literal has one, and the literal itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Value {
    pub float: f64,
    pub exact: Option<QSqrt2>,
    pub literal: Number,
}

impl Value {
    fn zero() -> Self {
        Value { float: 0.0, exact: Some(QSqrt2::zero()), literal: Number::Float(0.into()) }
    }

    fn neg(self) -> Self {
        Value { float: -self.float, exact: self.exact.map(|q| -q), literal: self.literal.neg() }
    }
}

impl Number {
    pub fn value(&self) -> Result<Value, DocumentError> {
        match self {
            Number::Float(n) => {
                let float = n.as_f64().filter(|x| x.is_finite()).ok_or_else(|| DocumentError::NonFinite(n.to_string()))?;
                let exact = parse_rational(&n.to_string()).ok().map(QSqrt2::rational);
                Ok(Value { float, exact, literal: self.clone() })
            }
            Number::Exact(e) => {
                let q = e.to_qsqrt2().ok_or_else(|| DocumentError::Schema(format!("zero denominator in {e:?}")))?;
                Ok(Value { float: q.to_f64(), exact: Some(q), literal: self.clone() })
            }
        }
    }

    /// Exact form of `q` when it fits the wire format, else its double.
    pub fn from_exact(q: &QSqrt2) -> Number {
        match ExactEntry::from_qsqrt2(q) {
            Some(e) => Number::Exact(e),
            None => Number::from_f64(q.to_f64()),
        }
    }

    fn neg(&self) -> Number {
        match self {
            Number::Float(n) => match (n.as_i64(), n.as_f64()) {
                (Some(i), _) if i != i64::MIN => Number::Float((-i).into()),
                (_, Some(x)) => Number::from_f64(-x),
                _ => self.clone(),
            },
            Number::Exact(e) => Number::Exact(ExactEntry { num: -e.num, root2_num: e.root2_num.map(|r| -r), ..e.clone() }),
        }
    }

    pub fn from_f64(x: f64) -> Number {
        serde_json::Number::from_f64(x).map_or(Number::Float(0.into()), Number::Float)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: Number,
}

impl Component {
    fn cite(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix6: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Component>>,
    /// 4 diagonal entries or 16 row-major entries; used by `hodge`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Number>>,
}

/// A normalized tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub float: Mat<f64>,
    /// Present when every entry is exact.
    pub exact: Option<Mat<QSqrt2>>,
    /// Row-major entries as written, so echoes reparse to the same tensor.
    literals: Vec<Number>,
}

impl Tensor {
    pub fn from_float(float: Mat<f64>) -> Self {
        let literals = float.as_slice().iter().map(|&x| Number::from_f64(x)).collect();
        Tensor { float, exact: None, literals }
    }

    pub fn from_exact(exact: Mat<QSqrt2>) -> Self {
        let literals = exact.as_slice().iter().map(Number::from_exact).collect();
        Tensor { float: exact.to_f64(), exact: Some(exact), literals }
    }

    pub fn rational(&self) -> Option<Mat<Rational>> {
        let e = self.exact.as_ref()?;
        e.as_slice().iter().all(QSqrt2::is_rational).then(|| e.map(|x| x.a.clone()))
    }

    /// Row-major entries for output.
    pub fn entries(&self) -> Vec<Number> {
        self.literals.clone()
    }
}

#[derive(Debug, Clone)]
pub struct TensorDocument {
    pub label: Option<String>,
    pub tol: Option<f64>,
    pub tensor: Tensor,
}

impl TensorDocument {
    /// The document as it is echoed in reports: always `matrix6`.
    pub fn echo(&self) -> RawDocument {
        RawDocument {
            label: self.label.clone(),
            tol: self.tol,
            matrix6: Some(self.tensor.entries()),
            ..RawDocument::default()
        }
    }
}

fn collect(values: Vec<Value>, rows: usize, cols: usize) -> Tensor {
    let float = Mat::from_vec(rows, cols, values.iter().map(|v| v.float).collect());
    let literals = values.iter().map(|v| v.literal.clone()).collect();
    let exact: Option<Vec<QSqrt2>> = values.into_iter().map(|v| v.exact).collect();
    Tensor { float, exact: exact.map(|e| Mat::from_vec(rows, cols, e)), literals }
}

fn values(entries: &[Number]) -> Result<Vec<Value>, DocumentError> {
    entries.iter().map(Number::value).collect()
}

fn from_components(list: &[Component]) -> Result<Tensor, DocumentError> {
    let mut slots: BTreeMap<(usize, usize), (Value, &Component)> = BTreeMap::new();
    for c in list {
        if [c.i, c.j, c.k, c.l].iter().any(|&x| x > 3) {
            return Err(DocumentError::Schema(format!("index out of range in {}", c.cite())));
        }
        let v = c.value.value()?;
        let (upper, lower) = match (BivectorIndex::from_pair(c.i, c.j), BivectorIndex::from_pair(c.k, c.l)) {
            (Some(u), Some(l)) => (u, l),
            _ => {
                if v.float != 0.0 {
                    return Err(DocumentError::Schema(format!("repeated index with nonzero value in {}", c.cite())));
                }
                continue;
            }
        };
        // κ^{ij}_{kl}: the upper pair is the input, the lower pair the output.
        let sign = upper.1 * lower.1;
        let v = if sign < 0 { v.neg() } else { v };
        let key = (lower.0.position(), upper.0.position());
        if let Some((old, first)) = slots.get(&key) {
            let same = match (&old.exact, &v.exact) {
                (Some(a), Some(b)) => a == b,
                _ => old.float == v.float,
            };
            if !same {
                return Err(DocumentError::Conflict { first: first.cite(), second: c.cite() });
            }
            continue;
        }
        slots.insert(key, (v, c));
    }
    let cells = (0..36).map(|n| slots.get(&(n / 6, n % 6)).map_or_else(Value::zero, |(v, _)| v.clone())).collect();
    Ok(collect(cells, 6, 6))
}

impl RawDocument {
    pub fn tensor(&self) -> Result<TensorDocument, DocumentError> {
        let tensor = match (&self.matrix6, &self.components) {
            (Some(_), Some(_)) => return Err(DocumentError::Schema("both `matrix6` and `components` given".into())),
            (None, None) => return Err(DocumentError::Schema("expected `matrix6` or `components`".into())),
            (Some(m), None) => {
                if m.len() != 36 {
                    return Err(DocumentError::Schema(format!("`matrix6` needs 36 entries, got {}", m.len())));
                }
                collect(values(m)?, 6, 6)
            }
            (None, Some(c)) => from_components(c)?,
        };
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(DocumentError::Schema(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(TensorDocument { label: self.label.clone(), tol: self.tol, tensor })
    }

    pub fn metric(&self) -> Result<Mat<f64>, DocumentError> {
        let m = self.metric.as_ref().ok_or_else(|| DocumentError::Schema("expected `metric`".into()))?;
        let v: Vec<f64> = values(m)?.into_iter().map(|v| v.float).collect();
        match v.len() {
            4 => Ok(Mat::diag(&v)),
            16 => Ok(Mat::from_vec(4, 4, v)),
            n => Err(DocumentError::Schema(format!("`metric` needs 4 or 16 entries, got {n}"))),
        }
    }
}

pub fn parse_raw(bytes: &[u8]) -> Result<RawDocument, DocumentError> {
    Ok(serde_json::from_slice(bytes)?)
}

/// Parses a tensor document and applies the antisymmetric completion.
pub fn parse_tensor_document(bytes: &[u8]) -> Result<TensorDocument, DocumentError> {
    parse_raw(bytes)?.tensor()
}

/// A 6×6 matrix written as rows of entries.
pub fn parse_matrix(value: &serde_json::Value, what: &str) -> Result<Mat<f64>, DocumentError> {
    let rows: Vec<Vec<Number>> = serde_json::from_value(value.clone())
        .map_err(|e| DocumentError::Schema(format!("`{what}`: {e}")))?;
    if rows.len() != 6 || rows.iter().any(|r| r.len() != 6) {
        return Err(DocumentError::Schema(format!("`{what}` must be 6 rows of 6 entries")));
    }
    let flat: Vec<Number> = rows.into_iter().flatten().collect();
    Ok(collect(values(&flat)?, 6, 6).float)
}
