//! Exact serde encodings: a rational is `{"num": "3", "den": "2"}` with
//! decimal strings, and the point at infinity is the string `"inf"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::exact::{ProjPoint, QPoint};

#[derive(Serialize, Deserialize)]
struct Fraction {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Encoded {
    Finite(Fraction),
    Tag(String),
}

fn encode_rational(r: &BigRational) -> Fraction {
    Fraction {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

fn decode_rational<E: de::Error>(f: Fraction) -> Result<BigRational, E> {
    let num = BigInt::from_str(&f.num).map_err(E::custom)?;
    let den = BigInt::from_str(&f.den).map_err(E::custom)?;
    if den.is_zero() {
        return Err(E::custom("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn encode_point(p: &QPoint) -> Encoded {
    match p {
        ProjPoint::Finite(r) => Encoded::Finite(encode_rational(r)),
        ProjPoint::Infinity => Encoded::Tag("inf".into()),
    }
}

fn decode_point<E: de::Error>(e: Encoded) -> Result<QPoint, E> {
    match e {
        Encoded::Finite(f) => decode_rational(f).map(ProjPoint::Finite),
        Encoded::Tag(t) if t == "inf" => Ok(ProjPoint::Infinity),
        Encoded::Tag(t) => Err(E::custom(format!("expected \"inf\", got {t:?}"))),
    }
}

/// A rational point with the exact encoding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactPoint(pub QPoint);

impl Serialize for ExactPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        encode_point(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        decode_point(Encoded::deserialize(d)?).map(ExactPoint)
    }
}

/// A rational number with the exact encoding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRational(pub BigRational);

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        encode_rational(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        decode_rational(Fraction::deserialize(d)?).map(ExactRational)
    }
}

/// `#[serde(with = "points")]` for `Vec<QPoint>`.
pub mod points {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[QPoint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(encode_point))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<QPoint>, D::Error> {
        Vec::<Encoded>::deserialize(d)?.into_iter().map(decode_point).collect()
    }
}

/// `#[serde(with = "opt_rational")]` for `Option<BigRational>`.
pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(encode_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<Fraction>::deserialize(d)?.map(decode_rational).transpose()
    }
}
