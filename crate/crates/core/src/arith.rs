//! Exact scalars and the small amount of combinatorial arithmetic shared by
//! every other module.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact fraction of arbitrary-precision integers, always stored reduced with
/// a positive denominator.
pub type Rational = BigRational;

/// Coefficient ring for series and polynomials.
///
/// Only `+`, `-`, `*`, the two units and exact equality are required.
/// Scaling by a rational is part of the contract so that generic code can
/// divide by factorials.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn scale(&self, c: &Rational) -> Self;
}

impl Ring for Rational {
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k`.
pub fn neg_one_pow(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Falling factorial `(z)_k = z (z-1) ... (z-k+1)`, with `(z)_0 = 1` for every `z`.
pub fn falling(z: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = z.clone();
    for _ in 0..k {
        acc *= &term;
        term -= Rational::one();
    }
    acc
}

/// Generalized binomial `(z)_k / k!`; valid for any rational `z`.
pub fn binom(z: &Rational, k: usize) -> Rational {
    falling(z, k) / factorial(k)
}

/// Ordinary binomial coefficient for integer arguments. Returns zero when
/// `k < 0` or when `0 <= n < k`; negative `n` follows the generalized rule.
pub fn binom_int(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    binom(&int(n), k as usize)
}

/// Integer power with `0^0 = 1`. Negative exponents require a nonzero base.
pub fn pow_int(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow::pow(base.recip(), (-exp) as usize)
    }
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn as_integer(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_positive_integer(q: &Rational) -> bool {
    q.is_integer() && q.is_positive()
}

/// Canonical wire form `p/q` (reduced, `q > 0`). Integers keep the `/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q`, a bare integer `p`, or a decimal-free fraction with
/// surrounding whitespace. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
