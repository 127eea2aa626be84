//! Arbitrary-precision rationals, kept reduced with positive denominator.
//!
//! Backed by `num_rational::BigRational`, which maintains exactly the
//! canonical-form invariant we need: gcd(|numerator|, denominator) = 1 and
//! denominator > 0, with zero stored as 0/1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` with optional sign, arbitrary precision.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{num_str}`")))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{d}`")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    if denom.is_negative() {
        return Err(Error::Parse("denominator must be positive".into()));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical fraction string: `p` when the denominator is 1, else `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
