//! Exact rationals and their JSON encoding.
//!
//! Rationals travel through JSON as a pair of decimal strings
//! `["numerator", "denominator"]` so arbitrarily large values survive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: fall back to a scaled quotient
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `"-2"`, `"5/3"`, `"0.25"` (and the unicode minus sign) exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_val: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Comma separated list of exact rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nonzero rational with numerator and denominator bounded by `bound`.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            let d = rng.gen_range(1..=bound);
            return rat(n, d);
        }
    }
}

pub fn random_positive<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    random_nonzero(rng, bound).abs()
}

pub fn is_unit_sign(r: &Rational) -> bool {
    r.abs().is_one()
}

fn to_pair(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

fn from_pair(pair: &[String; 2]) -> std::result::Result<Rational, String> {
    let n: BigInt = pair[0].parse().map_err(|_| format!("bad numerator {:?}", pair[0]))?;
    let d: BigInt = pair[1].parse().map_err(|_| format!("bad denominator {:?}", pair[1]))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(n, d))
}

/// `#[serde(with = "serde_rational")]` for a single rational.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_pair(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let pair = <[String; 2]>::deserialize(d)?;
        from_pair(&pair).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "serde_rational_vec")]` for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(to_pair).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let pairs = Vec::<[String; 2]>::deserialize(d)?;
        pairs
            .iter()
            .map(from_pair)
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "serde_rational_matrix")]` for `Vec<Vec<Rational>>`.
pub mod serde_rational_matrix {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        m: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        m.iter()
            .map(|row| row.iter().map(to_pair).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<[String; 2]>>::deserialize(d)?;
        rows.iter()
            .map(|row| row.iter().map(from_pair).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "serde_triple")]` for `[Rational; 3]`.
pub mod serde_triple {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(t: &[Rational; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
        [to_pair(&t[0]), to_pair(&t[1]), to_pair(&t[2])].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<[Rational; 3], D::Error> {
        let pairs = <[[String; 2]; 3]>::deserialize(d)?;
        let conv = |p: &[String; 2]| from_pair(p).map_err(serde::de::Error::custom);
        Ok([conv(&pairs[0])?, conv(&pairs[1])?, conv(&pairs[2])?])
    }
}
