//! Number types shared by the exact (rational) and float code paths.

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Stored edge weight. Weights are kept exact so that both arithmetic modes
/// start from the same value.
pub type Weight = Rational64;

/// Arbitrary-precision rational used by the exact path.
pub type Exact = BigRational;

/// Absolute tolerance for float comparisons.
pub const FLOAT_TOL: f64 = 1e-12;

/// Selects the arithmetic used for scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ArithmeticMode {
    #[default]
    Exact,
    Float,
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticMode::Exact => f.write_str("exact"),
            ArithmeticMode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for ArithmeticMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ArithmeticMode::Exact),
            "float" => Ok(ArithmeticMode::Float),
            other => Err(Error::Domain(format!("unknown arithmetic mode `{other}`"))),
        }
    }
}

/// Field operations needed by the scoring and partitioning code.
pub trait Scalar:
    Clone
    + PartialOrd
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_weight(w: &Weight) -> Self;

    fn from_count(n: u64) -> Self;

    fn from_i128(n: i128) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality in the mode's sense: exact for rationals, `FLOAT_TOL` for floats.
    fn close_to(&self, other: &Self) -> bool;
}

impl Scalar for f64 {
    fn from_weight(w: &Weight) -> Self {
        *w.numer() as f64 / *w.denom() as f64
    }

    fn from_count(n: u64) -> Self {
        n as f64
    }

    fn from_i128(n: i128) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn close_to(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOL
    }
}

impl Scalar for BigRational {
    fn from_weight(w: &Weight) -> Self {
        BigRational::new(BigInt::from(*w.numer()), BigInt::from(*w.denom()))
    }

    fn from_count(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_i128(n: i128) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }
}

/// Exact rational from a numerator/denominator pair.
pub fn ratio(numer: i64, denom: i64) -> Exact {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses an edge weight: an integer, a decimal with optional exponent
/// (`0.25`, `1e-3`) or a fraction (`3/4`). The value is kept exact.
pub fn parse_weight(token: &str) -> Result<Weight> {
    let bad = || Error::Data(format!("invalid weight `{token}`"));
    if let Some((n, d)) = token.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(n, d));
    }

    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = token[i + 1..].parse().map_err(|_| bad())?;
            (&token[..i], e)
        }
        None => (token, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }

    let overflow = || Error::Data(format!("weight `{token}` exceeds exact range"));
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer
            .checked_mul(10)
            .and_then(|v| v.checked_add(i64::from(b - b'0')))
            .ok_or_else(overflow)?;
    }
    let scale = exponent - frac_part.len() as i32;
    let pow = |e: i32| 10i64.checked_pow(e.unsigned_abs()).ok_or_else(overflow);
    let mut value = if scale >= 0 {
        Rational64::from_integer(numer.checked_mul(pow(scale)?).ok_or_else(overflow)?)
    } else {
        Rational64::new(numer, pow(scale)?)
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Formats a weight so that [`parse_weight`] reads back the same value.
pub fn format_weight(w: &Weight) -> String {
    if w.is_integer() {
        return w.numer().to_string();
    }
    // Finite decimal expansion when the denominator is 2^a 5^b.
    let mut d = *w.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    let places = twos.max(fives);
    if d == 1 && places <= 18 {
        let scale = 10i128.pow(places);
        let scaled = i128::from(*w.numer()) * (scale / i128::from(*w.denom()));
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.abs();
        let int = abs / scale;
        let frac = abs % scale;
        let frac = format!("{:0width$}", frac, width = places as usize);
        return format!("{sign}{int}.{}", frac.trim_end_matches('0'));
    }
    format!("{}/{}", w.numer(), w.denom())
}

pub(crate) fn is_negative(w: &Weight) -> bool {
    w.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_forms() {
        assert_eq!(parse_weight("1").unwrap(), Rational64::from_integer(1));
        assert_eq!(parse_weight("0.25").unwrap(), Rational64::new(1, 4));
        assert_eq!(parse_weight("2.5e-1").unwrap(), Rational64::new(1, 4));
        assert_eq!(parse_weight("3e2").unwrap(), Rational64::from_integer(300));
        assert_eq!(parse_weight("3/4").unwrap(), Rational64::new(3, 4));
        assert_eq!(parse_weight(".5").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_weight("-1.5").unwrap(), Rational64::new(-3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for t in ["", "abc", "1.2.3", "1/0", "nan", "inf", "1e", "--1", "1e999"] {
            assert!(parse_weight(t).is_err(), "{t}");
        }
    }

    #[test]
    fn format_round_trips() {
        for w in [
            Rational64::from_integer(7),
            Rational64::new(1, 4),
            Rational64::new(3, 40),
            Rational64::new(1, 3),
            Rational64::new(-5, 8),
        ] {
            assert_eq!(parse_weight(&format_weight(&w)).unwrap(), w);
        }
        assert_eq!(format_weight(&Rational64::new(3, 40)), "0.075");
        assert_eq!(format_weight(&Rational64::new(1, 3)), "1/3");
    }
}
