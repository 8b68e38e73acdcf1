//! Parsing, formatting and serde support for exact fractions.
//!
//! Fractions travel as strings `"num/den"` (or plain `"num"` when the
//! denominator is 1); integers travel as JSON numbers with arbitrary
//! precision. Decimal rendering is presentation-only and never feeds back
//! into any computation.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{Error, Int, Rational, Result};

/// Parse an exact fraction from `"a/b"` or `"a"` text.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let trimmed = s.trim();
    let mk_err = |reason: &str| Error::ParseRational {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| mk_err("bad numerator"))?;
            let d: BigInt = den.trim().parse().map_err(|_| mk_err("bad denominator"))?;
            if d.is_zero() {
                return Err(mk_err("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = trimmed.parse().map_err(|_| mk_err("bad integer"))?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Format as `"num/den"`, or `"num"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal approximation to `digits` fractional digits, rounded half away
/// from zero. Clearly an approximation; exact values stay fractions.
pub fn decimal_approx(r: &Rational, digits: u32) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    // round(|r| * 10^digits) = floor((2*num*scale + den) / (2*den))
    let scaled = (abs.numer() * &scale * 2 + abs.denom()) / (abs.denom() * 2);
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}

/// Exact rational ceiling as an integer.
pub fn ceil_to_int(r: &Rational) -> Int {
    r.ceil().to_integer()
}

/// Serde adapter: `Rational` as an exact fraction string.
pub mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Int` as a JSON number of arbitrary precision.
pub mod int_number {
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Int;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&v.to_string())
            .map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        Int::from_str(&n.to_string()).map_err(serde::de::Error::custom)
    }
}
