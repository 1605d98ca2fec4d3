//! Exact rational amounts.
//!
//! Every value, weight, payment and welfare level in the engine is a
//! [`Rational`]. Text form is `"p/q"`, or `"p"` when the denominator is one.
//! Parsing additionally accepts plain decimals such as `"2.75"`.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err())?;
        let den: i64 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        if !digits.is_empty() && !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let whole: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| err())? };
        let scale = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(err)?;
        let frac: i64 = frac_part.parse().map_err(|_| err())?;
        let magnitude = whole.checked_mul(scale).and_then(|w| w.checked_add(frac)).ok_or_else(err)?;
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(Ratio::new(numer, scale));
    }
    s.parse::<i64>().map(Ratio::from_integer).map_err(|_| err())
}

pub fn format_rational(value: &Rational) -> String {
    if value.denom() == &1 {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn int(n: i64) -> Rational {
    Ratio::from_integer(n)
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// `serde(with = "...")` adapter storing a rational as its text form.
pub mod as_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("6").unwrap(), int(6));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("13/2").unwrap(), Ratio::new(13, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert_eq!(parse_rational("2.75").unwrap(), Ratio::new(11, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), Ratio::new(-1, 2));
        assert_eq!(parse_rational(".25").unwrap(), Ratio::new(1, 4));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1/0", "1.", "1.2.3", "--1", "1/2/3", "1.-5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&Ratio::new(-6, 4)), "-3/2");
        assert_eq!(format_rational(&zero()), "0");
    }
}
