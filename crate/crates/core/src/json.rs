//! JSON shapes for polynomials and matrices. Scalars are written as strings
//! in the literal syntax of [`crate::parse`]; integers are also accepted on
//! input.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Mat;
use crate::parse::parse_scalar;
use crate::poly::Poly;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub field: String,
    pub coeffs: Vec<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatJson {
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Value>>,
}

fn scalar_from_value(field: &Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(field, s),
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| Error::Json(format!("non-integer number {n}")))?;
            Ok(field.from_i64(i))
        }
        other => Err(Error::Json(format!("scalar expected, found {other}"))),
    }
}

impl From<Poly> for PolyJson {
    fn from(p: Poly) -> Self {
        let f = p.field();
        PolyJson {
            field: f.to_string(),
            coeffs: p.coeffs().iter().map(|c| Value::String(f.render(c))).collect(),
        }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Poly> {
        let field = Field::parse(&j.field)?;
        let coeffs = j.coeffs.iter().map(|v| scalar_from_value(&field, v)).collect::<Result<_>>()?;
        Ok(Poly::new(&field, coeffs))
    }
}

impl From<Mat> for MatJson {
    fn from(m: Mat) -> Self {
        let f = m.field();
        MatJson {
            field: f.to_string(),
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| Value::String(f.render(x))).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatJson> for Mat {
    type Error = Error;

    fn try_from(j: MatJson) -> Result<Mat> {
        let field = Field::parse(&j.field)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Json(format!(
                "entries do not match the declared {}x{} shape",
                j.rows, j.cols
            )));
        }
        let data = j
            .entries
            .iter()
            .flatten()
            .map(|v| scalar_from_value(&field, v))
            .collect::<Result<_>>()?;
        Ok(Mat::new(&field, j.rows, j.cols, data))
    }
}

impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatJson::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatJson::deserialize(d)?;
        Mat::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Poly::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}
