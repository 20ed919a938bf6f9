//! Exact rational scalars and parsing helpers.

use alloc::string::String;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Arbitrary-precision rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer numerator and denominator.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Parses a rational from `p`, `-p`, or `p/q` notation.
pub fn parse_rational(text: &str) -> Result<Rational, PolyError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(PolyError::InvalidInput("empty rational literal".into()));
    }
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num_text
        .parse()
        .map_err(|_| PolyError::InvalidInput(alloc::format!("bad numerator in {text:?}")))?;
    let den: BigInt = match den_text {
        Some(d) => d
            .parse()
            .map_err(|_| PolyError::InvalidInput(alloc::format!("bad denominator in {text:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(PolyError::InvalidInput(alloc::format!(
            "zero denominator in {text:?}"
        )));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `p` or `p/q` with no spaces.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        alloc::format!("{}/{}", value.numer(), value.denom())
    }
}

/// Converts a rational to the nearest f64.
///
/// Exact for values whose numerator and denominator fit in f64; used only
/// for reporting, never inside exact computations.
pub fn to_f64(value: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
