//! Exact rational values and their `"p/q"` text form.
//!
//! Every objective value, weight and efficiency in the crate is a [`Rational`].
//! Ties in the greedy rule and the bound-achieving constructions depend on exact
//! equality, so floats only appear when exporting plot data.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(value)
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format(value: &Rational) -> String {
    if *value.denom() == 1 {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::input(format!("malformed rational {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n = i64::from_str(n.trim()).map_err(|_| bad())?;
            let d = i64::from_str(d.trim()).map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::input(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => i64::from_str(text).map(int).map_err(|_| bad()),
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

pub(crate) fn to_big(value: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*value.numer()), BigInt::from(*value.denom()))
}

pub(crate) fn from_big(value: &BigRational) -> Result<Rational> {
    let n = value.numer().to_i64();
    let d = value.denom().to_i64();
    match (n, d) {
        (Some(n), Some(d)) => Ok(Rational::new(n, d)),
        _ => Err(Error::consistency(format!(
            "rational {value} does not fit in 64-bit components"
        ))),
    }
}

pub(crate) fn is_nonnegative(value: &Rational) -> bool {
    !(*value < Rational::zero())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

impl RawRational {
    fn into_rational<E: serde::de::Error>(self) -> std::result::Result<Rational, E> {
        match self {
            RawRational::Int(v) => Ok(int(v)),
            RawRational::Text(s) => parse(&s).map_err(E::custom),
        }
    }
}

/// Serde adapter: a rational as a `"p/q"` string (integers also accepted on input).
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RawRational::deserialize(d)?.into_rational()
    }
}

pub mod vec_as_string {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(
        values: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        // Convert per element so a bad entry is reported at its own index.
        struct Item(Rational);
        impl<'de> Deserialize<'de> for Item {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                RawRational::deserialize(d)?.into_rational().map(Item)
            }
        }
        Ok(Vec::<Item>::deserialize(d)?.into_iter().map(|i| i.0).collect())
    }
}

pub mod option_as_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&format(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<RawRational>::deserialize(d)?
            .map(RawRational::into_rational)
            .transpose()
    }
}
