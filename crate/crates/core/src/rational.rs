//! Exact rationals and the small amount of integer combinatorics shared by
//! the other modules.
//!
//! Rationals are `num_rational::BigRational`, always kept in lowest terms
//! with a positive denominator. The text form is `p/q`, or just `p` when the
//! denominator is one.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p/q` (or `p` for integers).
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses a JSON value that is either a rational string or an integer.
pub fn from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse(s),
        serde_json::Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
        serde_json::Value::Number(n) if n.is_u64() => {
            Ok(Rational::from_integer(BigInt::from(n.as_u64().unwrap())))
        }
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    // Shift both parts down to keep the quotient representable.
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The generalised binomial coefficient C(1/2, m).
pub fn half_binomial(m: usize) -> Rational {
    let half = frac(1, 2);
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= &half - int(i as i64);
    }
    acc / Rational::from_integer(factorial(m).into())
}

/// Returns the value as a non-negative integer, or `None`.
pub fn to_natural(r: &Rational) -> Option<BigUint> {
    if r.is_integer() && !r.is_negative() {
        r.numer().to_biguint()
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
