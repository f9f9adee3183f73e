//! Exact rational scalars.
//!
//! All arithmetic in this crate is exact: scalars are arbitrary-precision
//! rationals kept in lowest terms with positive denominator, which is the
//! normal form `num_rational::BigRational` maintains. This module adds the
//! strict string format used on every external surface: `p` or `p/q` with
//! `q > 0`, matching `-?\d+(/\d+)?`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?} (expected `p` or `p/q`)")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn is_plain_integer(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Parse a rational from the strict external format `-?\d+(/\d+)?`.
///
/// The denominator, when present, is an unsigned nonzero integer. Whitespace,
/// explicit plus signs and signed denominators are rejected.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let (numer, denom) = match s.split_once('/') {
        None => (s, None),
        Some((n, d)) => (n, Some(d)),
    };
    if !is_plain_integer(numer) {
        return Err(ParseRatError::Malformed(s.to_owned()));
    }
    let n: BigInt = numer.parse().expect("validated integer literal");
    let d: BigInt = match denom {
        None => BigInt::from(1),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRatError::Malformed(s.to_owned()));
            }
            d.parse().expect("validated integer literal")
        }
    };
    if d == BigInt::from(0) {
        return Err(ParseRatError::ZeroDenominator(s.to_owned()));
    }
    Ok(Rat::new(n, d))
}

/// Render a rational in the external format: `p` for integers, `p/q` otherwise.
pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
