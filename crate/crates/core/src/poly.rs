//! Dense univariate polynomials.
//!
//! [`Poly`] is generic over its coefficient ring so that a polynomial in `x`
//! whose coefficients are polynomials in `y` ([`BivariatePolynomial`]) needs
//! no separate implementation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{binom_int, falling, int, Rational, Ring};
use crate::error::{Error, Result};

/// Coefficients in ascending degree; the highest stored coefficient is
/// nonzero and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

pub type Polynomial = Poly<Rational>;

/// Polynomial in `x` with coefficients in `y`.
pub type BivariatePolynomial = Poly<Polynomial>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&int(k as i64)))
                .collect(),
        )
    }

    /// `k`-th derivative, computed in one pass with falling factorials.
    pub fn nth_derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(k)
                .map(|(m, c)| c.scale(&falling(&int(m as i64), k)))
                .collect(),
        )
    }

    pub fn mul_by_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(R::zero());
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation at a point of the coefficient ring.
    pub fn eval(&self, x0: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x0.clone() + c.clone())
    }

    /// `self(q(x))`.
    pub fn compose(&self, q: &Poly<R>) -> Poly<R> {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    /// `x^n self(1/x)`; requires `n >= deg self`.
    pub fn reversed(&self, n: usize) -> Result<Self> {
        match self.degree() {
            None => Ok(Self::zero()),
            Some(d) if d > n => Err(Error::InvalidParameter(format!(
                "cannot reverse a degree {d} polynomial at degree {n}"
            ))),
            Some(_) => {
                let mut v = vec![R::zero(); n + 1];
                for (k, c) in self.coeffs.iter().enumerate() {
                    v[n - k] = c.clone();
                }
                Ok(Self::new(v))
            }
        }
    }

    /// `self(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Lifts into a polynomial over `S` coefficient by coefficient.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Polynomial {
    /// Monomial `x^n`.
    pub fn x_pow(n: usize) -> Self {
        Self::monomial(Rational::one(), n)
    }

    /// From small integer numerators over a common denominator.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    /// Divides by `x`; the constant coefficient must be exactly zero.
    pub fn div_by_x(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if !c0.is_zero() {
            return Err(Error::XInverseUndefined {
                constant: crate::arith::format_rational(&c0),
            });
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Poly {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `p(x + y)` for a rational `y`, by binomial re-expansion:
    /// `[x^j] = Σ_{m>=j} binom(m, j) c_m y^{m-j}`.
    pub fn shift(&self, y: &Rational) -> Self {
        let n = self.coeffs.len();
        let mut powers = Vec::with_capacity(n);
        let mut p = Rational::one();
        for _ in 0..n {
            powers.push(p.clone());
            p *= y;
        }
        Self::new(
            (0..n)
                .map(|j| {
                    (j..n)
                        .map(|m| binom_int(m as i64, j as i64) * &self.coeffs[m] * &powers[m - j])
                        .sum()
                })
                .collect(),
        )
    }

    /// `p(x + y)` with `y` a second indeterminate.
    pub fn shift_symbolic(&self) -> BivariatePolynomial {
        let n = self.coeffs.len();
        Poly::new(
            (0..n)
                .map(|j| {
                    let mut v = vec![Rational::zero(); n - j];
                    for m in j..n {
                        v[m - j] = binom_int(m as i64, j as i64) * &self.coeffs[m];
                    }
                    Polynomial::new(v)
                })
                .collect(),
        )
    }

    /// Reads this polynomial as one in `y` only: `p(y)` as a bivariate
    /// value constant in `x`.
    pub fn in_y(&self) -> BivariatePolynomial {
        Poly::constant(self.clone())
    }

    /// Reads this polynomial as one in `x` with constant `y`-coefficients.
    pub fn in_x(&self) -> BivariatePolynomial {
        self.map(|c| Polynomial::constant(c.clone()))
    }

    /// Monic falling factorial `(x)_n = x (x-1) ... (x-n+1)`.
    pub fn falling_factorial(n: usize) -> Self {
        let mut acc = Self::one();
        for i in 0..n {
            acc = &acc * &Polynomial::new(vec![int(-(i as i64)), int(1)]);
        }
        acc
    }

    /// Falling factorial with a signed index; negative `n` is an error.
    pub fn falling_factorial_checked(n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeIndex(n));
        }
        Ok(Self::falling_factorial(n as usize))
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly::constant(R::one())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn scale(&self, c: &Rational) -> Self {
        Poly::scale(self, c)
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Self) -> Poly<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: Ring> std::iter::Sum for Poly<R> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |a, b| &a + &b)
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

fn write_rational_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, k: usize) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let show_coeff = k == 0 || !mag.is_one();
    if show_coeff {
        write!(f, "{mag}")?;
    }
    match k {
        0 => Ok(()),
        _ => {
            if show_coeff {
                f.write_str("*")?;
            }
            if k == 1 {
                f.write_str("x")
            } else {
                write!(f, "x^{k}")
            }
        }
    }
}

/// Ascending-degree rendering, e.g. `1/6 - x + x^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_rational_term(f, first, c, k)?;
            first = false;
        }
        Ok(())
    }
}
