//! Rational numbers and their textual form.
//!
//! Rationals travel through JSON as strings `"p/q"` (or `"p"` for integers); integer
//! JSON numbers are accepted on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;
use std::fmt;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::arg(format!("not a rational: {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::arg(format!("not a rational: {text:?}")))?;
    if den.is_zero() {
        return Err(Error::arg(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Representative of `value` modulo 1 in `[0, 1)`.
pub fn frac_mod_one(value: &Rational) -> Rational {
    value - value.floor()
}

pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

/// `value` modulo `modulus` as a `u64`, or `None` when the denominator is not invertible.
pub fn rational_mod(value: &Rational, modulus: u64) -> Option<u64> {
    let m = BigInt::from(modulus);
    let num = value.numer().mod_floor_big(&m);
    let den = value.denom().mod_floor_big(&m);
    let den_inv = crate::exactnum::primes::mod_inverse(den, modulus)?;
    Some(((num as u128 * den_inv as u128) % modulus as u128) as u64)
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> u64;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> u64 {
        let mut r = self % m;
        if r.is_negative() {
            r += m;
        }
        u64::try_from(r).expect("residue fits in u64")
    }
}

pub fn bigint_mod(value: &BigInt, modulus: u64) -> u64 {
    value.mod_floor_big(&BigInt::from(modulus))
}

/// Serde adapter for a single rational stored as `"p/q"`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

/// Serde adapter for a list of rationals.
pub mod serde_rational_vec {
    use super::*;
    use serde::de::SeqAccess;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        struct SeqVisitor;
        impl<'de> Visitor<'de> for SeqVisitor {
            type Value = Vec<Rational>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(RationalField(v)) = seq.next_element()? {
                    out.push(v);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(SeqVisitor)
    }
}

/// Newtype deserializing one rational; used inside sequences and matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalField(pub Rational);

impl<'de> serde::Deserialize<'de> for RationalField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor).map(RationalField)
    }
}

impl serde::Serialize for RationalField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\" or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        parse_rational(v).map_err(E::custom)
    }
}

/// Serde adapter for arbitrary-precision integers: JSON integers or decimal strings.
pub mod serde_bigint_vec {
    use super::*;
    use serde::de::SeqAccess;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            match i64::try_from(v) {
                Ok(small) => seq.serialize_element(&small)?,
                Err(_) => seq.serialize_element(&v.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        struct SeqVisitor;
        impl<'de> Visitor<'de> for SeqVisitor {
            type Value = Vec<BigInt>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(RationalField(v)) = seq.next_element()? {
                    if !v.is_integer() {
                        return Err(de::Error::custom(format!(
                            "expected an integer, got {}",
                            format_rational(&v)
                        )));
                    }
                    out.push(v.to_integer());
                }
                Ok(out)
            }
        }
        d.deserialize_seq(SeqVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac_mod_one(&rat(-1, 2)), rat(1, 2));
        assert_eq!(frac_mod_one(&rat(7, 3)), rat(1, 3));
        assert!(is_integral(&frac_mod_one(&int(-4))));
    }

    #[test]
    fn reduction_mod_prime() {
        assert_eq!(rational_mod(&rat(1, 2), 5), Some(3));
        assert_eq!(rational_mod(&rat(-1, 3), 7), Some(2));
        assert_eq!(rational_mod(&rat(1, 5), 5), None);
    }
}
