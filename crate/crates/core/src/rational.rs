//! Exact rational helpers shared across the crate.
//!
//! All user-facing numbers (defects, tolerances, entries over ℚ) are exact
//! rationals and are rendered as `"p/q"` or plain integer strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Normalized rank `rank / n`; a 0×0 matrix has normalized rank 0.
pub fn normalized(rank: usize, n: usize) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    Rational::new(BigInt::from(rank), BigInt::from(n))
}

pub fn from_usize(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a"`, `"-a"` or `"a/b"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Floor of a nonnegative rational as `usize`.
pub fn floor_usize(r: &Rational) -> usize {
    assert!(!r.is_negative(), "floor_usize of a negative rational");
    let f = r.floor().to_integer();
    usize::try_from(f).expect("rational too large for usize")
}

/// Ceiling of a nonnegative rational as `usize`.
pub fn ceil_usize(r: &Rational) -> usize {
    assert!(!r.is_negative(), "ceil_usize of a negative rational");
    let c = r.ceil().to_integer();
    usize::try_from(c).expect("rational too large for usize")
}

pub(crate) mod serde_string {
    use super::{format_rational, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }
}
