use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::VertexPartition;
use crate::pebble::Distribution;
use crate::rational::{ceil, floor, format_rational, parse_rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Pebbling,
    OptimalPebbling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    Lower,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Distribution(Distribution),
    Partition(VertexPartition),
}

/// A named parameter: an integer or an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Int(i64),
    Rational(BigRational),
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<BigRational> for Param {
    fn from(q: BigRational) -> Self {
        Param::Rational(q)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Rational(q) => f.write_str(&format_rational(q)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Int(v) => s.serialize_i64(*v),
            Param::Rational(q) => s.serialize_str(&format_rational(q)),
        }
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Scalar::deserialize(d)? {
            Scalar::Int(v) => Ok(Param::Int(v)),
            Scalar::Text(t) => parse_rational(&t)
                .map(Param::Rational)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}"))),
        }
    }
}

fn big_to_scalar(v: &BigInt) -> Scalar {
    v.to_i64().map_or_else(|| Scalar::Text(v.to_string()), Scalar::Int)
}

fn scalar_to_big<E: serde::de::Error>(s: Scalar) -> Result<BigInt, E> {
    match s {
        Scalar::Int(v) => Ok(v.into()),
        Scalar::Text(t) => t.parse().map_err(|_| E::custom(format!("bad integer {t:?}"))),
    }
}

/// One bound on a pebbling parameter of a graph or family, with its exact
/// value, the formula it came from and, when there is one, a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub quantity: Quantity,
    pub kind: BoundKind,
    pub value: BigRational,
    pub formula: String,
    pub params: BTreeMap<String, Param>,
    pub witness: Option<Witness>,
}

impl BoundReport {
    pub fn new(quantity: Quantity, kind: BoundKind, value: BigRational, formula: impl Into<String>) -> Self {
        BoundReport { quantity, kind, value, formula: formula.into(), params: BTreeMap::new(), witness: None }
    }

    pub fn param(mut self, name: &str, v: impl Into<Param>) -> Self {
        self.params.insert(name.to_string(), v.into());
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    /// The integer the bound implies: floor of an upper bound, ceiling of a
    /// lower bound, the value itself when exact.
    pub fn integer_value(&self) -> BigInt {
        match self.kind {
            BoundKind::Upper => floor(&self.value),
            BoundKind::Lower => ceil(&self.value),
            BoundKind::Exact => floor(&self.value),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.value.denom().is_one()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.kind {
            BoundKind::Upper => "<=",
            BoundKind::Lower => ">=",
            BoundKind::Exact => "=",
        };
        let q = match self.quantity {
            Quantity::Pebbling => "pi",
            Quantity::OptimalPebbling => "pi_opt",
        };
        write!(f, "{q} {rel} {} [{}]", format_rational(&self.value), self.formula)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawReport {
    quantity: Quantity,
    kind: BoundKind,
    value_num: Scalar,
    value_den: Scalar,
    formula: String,
    params: BTreeMap<String, Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawReport {
            quantity: self.quantity,
            kind: self.kind,
            value_num: big_to_scalar(self.value.numer()),
            value_den: big_to_scalar(self.value.denom()),
            formula: self.formula.clone(),
            params: self.params.clone(),
            witness: self.witness.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawReport::deserialize(d)?;
        let num = scalar_to_big::<D::Error>(raw.value_num)?;
        let den = scalar_to_big::<D::Error>(raw.value_den)?;
        if den == BigInt::from(0) {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(BoundReport {
            quantity: raw.quantity,
            kind: raw.kind,
            value: BigRational::new(num, den),
            formula: raw.formula,
            params: raw.params,
            witness: raw.witness,
        })
    }
}
