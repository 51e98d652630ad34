//! Exact rational scalars and their text form.
//!
//! Text form is `p` or `p/q` with an optional leading minus sign (ASCII `-`
//! or U+2212), `q > 0`. Output is always canonical: lowest terms, ASCII
//! minus, denominator omitted when it is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of the field ℚ. `BigRational` keeps itself reduced with a
/// positive denominator after every operation, so structural equality is
/// value equality.
pub type Scalar = BigRational;

pub fn from_int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn from_frac(num: i64, den: i64) -> Result<Scalar> {
    if den == 0 {
        return Err(Error::Scalar {
            text: format!("{num}/{den}"),
            reason: "zero denominator",
        });
    }
    Ok(Scalar::new(BigInt::from(num), BigInt::from(den)))
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = |reason| Error::Scalar {
        text: text.to_string(),
        reason,
    };
    let (negative, body) = if let Some(rest) = text.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = text.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, text)
    };
    let (num_text, den_text) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| -> Result<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected decimal digits"));
        }
        BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(|| bad("expected decimal digits"))
    };
    let mut num = digits(num_text)?;
    let den = match den_text {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    if negative {
        num = -num;
    }
    Ok(Scalar::new(num, den))
}

pub fn format_scalar(s: &Scalar) -> String {
    let num = s.numer();
    let den = s.denom();
    let sign = if num.is_negative() { "-" } else { "" };
    if den.is_one() {
        format!("{sign}{}", num.abs())
    } else {
        format!("{sign}{}/{}", num.abs(), den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        assert_eq!(format_scalar(&parse_scalar("2/4").unwrap()), "1/2");
        assert_eq!(format_scalar(&parse_scalar("-7").unwrap()), "-7");
        assert_eq!(format_scalar(&parse_scalar("\u{2212}7").unwrap()), "-7");
        assert!(parse_scalar("3/-1").is_err());
        assert_eq!(format_scalar(&parse_scalar("-6/4").unwrap()), "-3/2");
        assert_eq!(format_scalar(&parse_scalar("0/5").unwrap()), "0");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1/0", "1.5", "", "-", "1/", "/2", "+3", " 1", "1e3", "--1", "0x10"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should not parse");
        }
        assert!(from_frac(1, 0).is_err());
    }

    #[test]
    fn field_axioms_exact() {
        let a = parse_scalar("7/3").unwrap();
        let b = parse_scalar("-11/5").unwrap();
        assert_eq!((&a + &b) - &b, a);
        assert_eq!((&a * &b) / &b, a);
        assert_eq!(from_frac(4, -6).unwrap(), parse_scalar("-2/3").unwrap());
    }
}
