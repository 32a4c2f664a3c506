//! Exact rational exponents.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every endpoint and exponent.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// `true` when `x` lies in ½ℤ.
pub fn is_half_integral(x: &Q) -> bool {
    (x * 2).is_integer()
}

/// `x` as an integer when it is one.
pub fn as_integer(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer())
}

/// Parses `int` or `int/int`, with an optional leading minus sign.
///
/// `offset` is added to reported error positions so callers embedding the
/// rational in a larger input get absolute positions.
pub fn parse_rational_at(s: &str, offset: usize) -> Result<Q> {
    let malformed = |msg: &str| Error::syntax(offset, format!("malformed rational `{s}`: {msg}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(num).ok_or_else(|| malformed("bad numerator"))?;
    let den = match den {
        None => 1,
        Some(d) if d.bytes().all(|b| b.is_ascii_digit()) && !d.is_empty() => d
            .parse::<i64>()
            .map_err(|_| malformed("denominator out of range"))?,
        Some(_) => return Err(malformed("bad denominator")),
    };
    if den.is_zero() {
        return Err(malformed("zero denominator"));
    }
    Ok(Q::new(num, den))
}

pub fn parse_rational(s: &str) -> Result<Q> {
    parse_rational_at(s, 0)
}

fn parse_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Lowest-terms text form: `5/2`, `-1/2`, `3`.
pub fn format_rational(x: &Q) -> String {
    x.to_string()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Serde adapter: rationals travel as `"p/q"` strings, integers are also
/// accepted as JSON numbers on input.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(q(n)),
            Repr::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
        }
    }
}
