//! Arbitrary-precision rationals and their canonical text form.
//!
//! Every rational that crosses a file or process boundary is written as a
//! string: `"p"` for integers and `"p/q"` otherwise, always in lowest terms
//! with a positive denominator. Parsing accepts the same two shapes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rat = BigRational;

#[inline]
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[inline]
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(if r.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Largest integer `<= r`.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// `Some(s)` with `s >= 0` and `s * s == r` when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(r.numer())?;
    let d = integer_sqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

pub(crate) fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Serde adapter for a single rational stored as a string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals stored as strings.
pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for a fixed triple of rationals.
pub mod serde_rat3 {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat; 3], s: S) -> Result<S::Ok, S::Error> {
        super::serde_rat_vec::serialize(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rat; 3], D::Error> {
        let v = super::serde_rat_vec::deserialize(d)?;
        <[Rat; 3]>::try_from(v).map_err(|v| {
            serde::de::Error::custom(format!("expected 3 rationals, got {}", v.len()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rat(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rat("2/-4").unwrap(), frac(-1, 2));
        assert_eq!(fmt_rat(&frac(-6, 4)), "-3/2");
        assert_eq!(fmt_rat(&int(7)), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
        assert_eq!(rational_sqrt(&int(6)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }

    #[test]
    fn floors_and_ceilings() {
        assert_eq!(ceil_int(&frac(-3, 2)), BigInt::from(-1));
        assert_eq!(floor_int(&frac(-3, 2)), BigInt::from(-2));
        assert_eq!(ceil_int(&int(2)), BigInt::from(2));
    }
}
