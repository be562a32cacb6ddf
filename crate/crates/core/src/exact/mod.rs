//! Exact characteristic-zero coefficients: rationals and cyclotomic fields.

pub mod cyclotomic;
pub mod linalg;
pub mod poly;
pub mod rational;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cyclotomic::{apply_aut, field_arith, root_of_unity, ArithOp, CyclotomicField, FieldAut, FieldElement};
pub use linalg::FieldMatrix;
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("no primitive root of unity of order {order} in {field}")]
    OrderNotSupported { order: u64, field: String },
    #[error("exponent {k} is not invertible modulo {conductor}")]
    NotInvertibleExponent { k: i64, conductor: u64 },
    #[error("invalid conductor {0}")]
    BadConductor(u64),
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Wire form of a field element: field tag plus exact coefficient strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldElementRepr {
    pub field: String,
    pub coeffs: Vec<String>,
}

impl From<&FieldElement> for FieldElementRepr {
    fn from(a: &FieldElement) -> Self {
        FieldElementRepr { field: a.field().tag(), coeffs: a.to_strings() }
    }
}

impl FieldElementRepr {
    pub fn decode(&self) -> Result<FieldElement, FieldError> {
        let field = CyclotomicField::from_tag(&self.field)?;
        FieldElement::from_strings(&field, &self.coeffs)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FieldElementRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FieldElementRepr::deserialize(d)?.decode().map_err(serde::de::Error::custom)
    }
}
