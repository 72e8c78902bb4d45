//! Truncated formal power series in `t`.
//!
//! A [`Series`] stores ordinary coefficients `c_0, ..., c_N` of `t^k` and
//! carries its truncation order `N` explicitly. Every binary operation keeps
//! the smaller of the two orders, so a result never claims more precision
//! than its inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{format_rational, int, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Series<R = Rational> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Builds a series of truncation order `n` from leading coefficients.
    /// Missing coefficients are zero and anything past `t^n` is dropped.
    pub fn new(mut coeffs: Vec<R>, n: usize) -> Self {
        coeffs.truncate(n + 1);
        coeffs.resize(n + 1, R::zero());
        Series { coeffs }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> R) -> Self {
        Series {
            coeffs: (0..=n).map(f).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Vec::new(), n)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(R::one(), n)
    }

    pub fn constant(c: R, n: usize) -> Self {
        Self::new(vec![c], n)
    }

    /// `c * t^k`, or zero if `k > n`.
    pub fn monomial(c: R, k: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `t` itself.
    pub fn t(n: usize) -> Self {
        Self::monomial(R::one(), 1, n)
    }

    /// Largest retained exponent.
    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `t^k`. Panics if `k` exceeds the truncation order.
    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    /// Smallest `k` with a nonzero coefficient; `None` stands for infinity
    /// (every retained coefficient is zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    /// Drops precision down to order `n`. Asking for more precision than is
    /// available is an error.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.trunc_order() {
            return Err(Error::SeriesTooShort {
                needed: n,
                available: self.trunc_order(),
            });
        }
        Ok(Series {
            coeffs: self.coeffs[..=n].to_vec(),
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Multiplies by `t^k`; the truncation order is unchanged.
    pub fn mul_t(&self, k: usize) -> Self {
        let n = self.trunc_order();
        Series::from_fn(n, |i| {
            if i >= k {
                self.coeffs[i - k].clone()
            } else {
                R::zero()
            }
        })
    }

    /// Cancels one factor of `t`. The result is known to order `N - 1`.
    pub fn div_t(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        if self.trunc_order() == 0 {
            return Err(Error::SeriesTooShort {
                needed: 1,
                available: 0,
            });
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn derivative(&self) -> Self {
        let n = self.trunc_order();
        if n == 0 {
            return Self::zero(0);
        }
        Series::from_fn(n - 1, |k| self.coeffs[k + 1].scale(&int(k as i64 + 1)))
    }

    pub fn pow_usize(&self, mut e: usize) -> Self {
        let mut acc = Self::one(self.trunc_order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f(g(t))`. The inner series must have no constant term.
    pub fn compose(&self, g: &Series<R>) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::CompositionNeedsDelta);
        }
        let n = self.trunc_order().min(g.trunc_order());
        let g = Series {
            coeffs: g.coeffs[..=n].to_vec(),
        };
        // Horner: f_0 + g (f_1 + g (f_2 + ...))
        let mut acc = Self::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }
}

impl Series<Rational> {
    /// Multiplicative inverse of an order-zero series (triangular solve).
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let n = self.trunc_order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out.push(-s * &inv0);
        }
        Ok(Series { coeffs: out })
    }

    /// Compositional inverse `f̄` of a series of order exactly one, found by
    /// solving `[t^k] f(f̄(t)) = δ_{k,1}` one coefficient at a time.
    pub fn comp_inverse(&self) -> Result<Self> {
        let order = self.order();
        if order != Some(1) {
            return Err(Error::NotDelta {
                order: order.map_or("infinity".to_string(), |o| o.to_string()),
            });
        }
        let n = self.trunc_order();
        let c1 = &self.coeffs[1];
        let inv1 = c1.recip();
        let mut h = Series::monomial(inv1.clone(), 1, n);
        // h_k is still zero here, so [t^k] h^j for j >= 2 only sees solved
        // coefficients.
        for k in 2..=n {
            let mut acc = Rational::zero();
            let mut hp = &h * &h;
            for j in 2..=k {
                acc += &self.coeffs[j] * &hp.coeffs[k];
                if j < k {
                    hp = &hp * &h;
                }
            }
            h.coeffs[k] = -acc * &inv1;
        }
        Ok(h)
    }

    pub fn integral(&self) -> Self {
        let n = self.trunc_order();
        Series::from_fn(n + 1, |k| {
            if k == 0 {
                Rational::zero()
            } else {
                &self.coeffs[k - 1] / int(k as i64)
            }
        })
    }

    /// `exp(f)` for `f` without constant term, via `E' = f' E`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain {
                constant: format_rational(&self.coeffs[0]),
                expected: "0",
            });
        }
        let n = self.trunc_order();
        let mut e: Vec<Rational> = vec![Rational::one()];
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += int(j as i64) * &self.coeffs[j] * &e[k - j];
            }
            e.push(s / int(k as i64));
        }
        Ok(Series { coeffs: e })
    }

    /// `log(f)` for `f` with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Domain {
                constant: format_rational(&self.coeffs[0]),
                expected: "1",
            });
        }
        if self.trunc_order() == 0 {
            return Ok(Self::zero(0));
        }
        // f'/f is known to order N - 1, so the integral is back at order N.
        Ok((&self.derivative() * &self.reciprocal()?).integral())
    }

    /// Integer power; negative exponents require an invertible series.
    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_usize(e as usize))
        } else {
            Ok(self.reciprocal()?.pow_usize(e.unsigned_abs() as usize))
        }
    }

    /// Rational power. Non-integer exponents are computed as
    /// `exp(r log f)` and need constant term one.
    pub fn pow(&self, r: &Rational) -> Result<Self> {
        if r.is_integer() {
            if let Some(e) = crate::arith::as_integer(r) {
                return self.pow_i64(e);
            }
        }
        if !self.coeffs[0].is_one() {
            return Err(Error::RationalPowerUndefined {
                exponent: format_rational(r),
                constant: format_rational(&self.coeffs[0]),
            });
        }
        self.log()?.scale(r).exp()
    }
}

impl<R: Ring> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?} + O(t^{})", self.coeffs, self.trunc_order() + 1)
    }
}

fn zip_with<R: Ring>(a: &Series<R>, b: &Series<R>, op: impl Fn(&R, &R) -> R) -> Series<R> {
    let n = a.trunc_order().min(b.trunc_order());
    Series::from_fn(n, |k| op(&a.coeffs[k], &b.coeffs[k]))
}

impl<R: Ring> Add for &Series<R> {
    type Output = Series<R>;
    fn add(self, rhs: Self) -> Series<R> {
        zip_with(self, rhs, |x, y| x.clone() + y.clone())
    }
}

impl<R: Ring> Sub for &Series<R> {
    type Output = Series<R>;
    fn sub(self, rhs: Self) -> Series<R> {
        zip_with(self, rhs, |x, y| x.clone() - y.clone())
    }
}

impl<R: Ring> Mul for &Series<R> {
    type Output = Series<R>;
    fn mul(self, rhs: Self) -> Series<R> {
        let n = self.trunc_order().min(rhs.trunc_order());
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Series { coeffs: out }
    }
}

impl<R: Ring> Neg for &Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        self.map(|c| -c.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for Series<R> {
            type Output = Series<R>;
            fn $m(self, rhs: Self) -> Series<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Neg for Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        -&self
    }
}

/// Frequently used rational series, all truncated at order `n`.
pub mod standard {
    use super::*;
    use crate::arith::factorial;

    /// `e^{c t}`.
    pub fn exp_scaled(c: &Rational, n: usize) -> Series {
        let mut p = Rational::one();
        Series::from_fn(n, |k| {
            let v = &p / factorial(k);
            p *= c;
            v
        })
    }

    pub fn exp_t(n: usize) -> Series {
        exp_scaled(&Rational::one(), n)
    }

    /// `e^t - 1`.
    pub fn exp_minus_one(n: usize) -> Series {
        &exp_t(n) - &Series::one(n)
    }

    /// `log(1 + t)`.
    pub fn log_one_plus(n: usize) -> Series {
        Series::from_fn(n, |k| {
            if k == 0 {
                Rational::zero()
            } else if k % 2 == 1 {
                int(1) / int(k as i64)
            } else {
                int(-1) / int(k as i64)
            }
        })
    }

    /// `1 + c t`.
    pub fn linear(c: &Rational, n: usize) -> Series {
        Series::new(vec![Rational::one(), c.clone()], n)
    }

    /// `(e^t - 1) / t`, needs one order of headroom internally.
    pub fn exp_minus_one_over_t(n: usize) -> Series {
        Series::from_fn(n, |k| factorial(k + 1).recip())
    }

    /// `(e^t + 1) / 2`.
    pub fn exp_plus_one_half(n: usize) -> Series {
        (&exp_t(n) + &Series::one(n)).scale(&crate::arith::rat(1, 2))
    }

    /// `log(1 + t) / t`.
    pub fn log_one_plus_over_t(n: usize) -> Series {
        Series::from_fn(n, |k| {
            let v = int(1) / int(k as i64 + 1);
            if k % 2 == 0 {
                v
            } else {
                -v
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::arith::{factorial, rat};
    use proptest::prelude::*;

    fn s(c: &[Rational], n: usize) -> Series {
        Series::new(c.to_vec(), n)
    }

    #[test]
    fn order_examples() {
        let n = 8;
        assert_eq!(s(&[int(0), int(1), rat(-1, 2)], n).order(), Some(1));
        let euler = (&exp_t(n) + &Series::one(n)).reciprocal().unwrap().scale(&int(2));
        assert_eq!(euler.order(), Some(0));
        assert_eq!(Series::<Rational>::zero(n).order(), None);
    }

    #[test]
    fn products() {
        let n = 6;
        let t = Series::<Rational>::t(n);
        assert_eq!(&t * &t, Series::monomial(int(1), 2, n));
        let a = s(&[int(1), int(1)], n);
        let b = s(&[int(1), int(-1)], n);
        assert_eq!(&a * &b, s(&[int(1), int(0), int(-1)], n));
    }

    #[test]
    fn truncation_is_min_of_operands() {
        let a = exp_t(5);
        let b = exp_t(9);
        assert_eq!((&a * &b).trunc_order(), 5);
        assert_eq!((&a + &b).trunc_order(), 5);
    }

    #[test]
    fn reciprocal_examples() {
        let n = 10;
        let geo = s(&[int(1), int(-1)], n).reciprocal().unwrap();
        assert_eq!(geo, Series::from_fn(n, |_| int(1)));
        assert_eq!(Series::<Rational>::one(n).reciprocal().unwrap(), Series::one(n));
        let q = exp_minus_one_over_t(n);
        let r = q.reciprocal().unwrap();
        // B_k / k! for k = 0, 1, 2
        assert_eq!(r.coeff(0), &int(1));
        assert_eq!(r.coeff(1), &rat(-1, 2));
        assert_eq!(r.coeff(2), &(rat(1, 6) / factorial(2)));
        assert_eq!(&q * &r, Series::one(n));
        assert_eq!(Series::<Rational>::t(n).reciprocal(), Err(Error::NotInvertible));
    }

    #[test]
    fn compose_examples() {
        let n = 12;
        let t = Series::<Rational>::t(n);
        assert_eq!(exp_minus_one(n).compose(&log_one_plus(n)).unwrap(), t);
        let f = exp_t(n);
        assert_eq!(f.compose(&t).unwrap(), f);
        let t2 = Series::monomial(int(1), 2, n);
        let g = s(&[int(0), int(1), int(1)], n);
        assert_eq!(
            t2.compose(&g).unwrap(),
            s(&[int(0), int(0), int(1), int(2), int(1)], n)
        );
        assert_eq!(
            t2.compose(&Series::one(n)),
            Err(Error::CompositionNeedsDelta)
        );
    }

    #[test]
    fn comp_inverse_examples() {
        let n = 10;
        let t = Series::<Rational>::t(n);
        assert_eq!(t.comp_inverse().unwrap(), t);
        let f = s(&[int(0), int(1), rat(-1, 2)], n);
        let inv = f.comp_inverse().unwrap();
        assert_eq!(
            &inv.coeffs()[..5],
            &[int(0), int(1), rat(1, 2), rat(1, 2), rat(5, 8)]
        );
        // closed form 1 - (1 - 2t)^{1/2}
        let closed = &Series::one(n) - &linear(&int(-2), n).pow(&rat(1, 2)).unwrap();
        assert_eq!(inv, closed);
        assert_eq!(f.compose(&inv).unwrap(), t);
        assert_eq!(inv.compose(&f).unwrap(), t);
        assert_eq!(exp_minus_one(n).comp_inverse().unwrap(), log_one_plus(n));
        assert!(matches!(
            Series::<Rational>::one(n).comp_inverse(),
            Err(Error::NotDelta { .. })
        ));
        assert!(matches!(
            Series::<Rational>::monomial(int(1), 2, n).comp_inverse(),
            Err(Error::NotDelta { .. })
        ));
        // nonunit linear coefficient is fine
        let g = s(&[int(0), int(3), int(1)], n);
        assert_eq!(g.compose(&g.comp_inverse().unwrap()).unwrap(), t);
    }

    #[test]
    fn exp_and_log_examples() {
        let n = 9;
        assert_eq!(Series::<Rational>::zero(n).exp().unwrap(), Series::one(n));
        assert_eq!(Series::<Rational>::t(n).exp().unwrap(), exp_t(n));
        assert_eq!(linear(&int(1), n).log().unwrap(), log_one_plus(n));
        assert!(matches!(Series::<Rational>::one(n).exp(), Err(Error::Domain { .. })));
        assert!(matches!(
            Series::constant(int(2), n).log(),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn pow_examples() {
        let n = 8;
        let f = exp_minus_one_over_t(n);
        assert_eq!(f.pow(&int(0)).unwrap(), Series::one(n));
        let h = linear(&int(1), n).pow(&rat(1, 2)).unwrap();
        assert_eq!(&h.coeffs()[..3], &[int(1), rat(1, 2), rat(-1, 8)]);
        assert_eq!(&h * &h, linear(&int(1), n));
        assert_eq!(f.pow(&int(-1)).unwrap(), f.reciprocal().unwrap());
        assert!(matches!(
            Series::new(vec![int(2), int(1)], n).pow(&rat(1, 3)),
            Err(Error::RationalPowerUndefined { .. })
        ));
        // integer powers of nonunit constant terms are fine
        let sq = Series::new(vec![int(2), int(1)], n).pow(&int(2)).unwrap();
        assert_eq!(&sq.coeffs()[..3], &[int(4), int(4), int(1)]);
    }

    #[test]
    fn div_t_cancels_one_factor() {
        let n = 6;
        let f = exp_minus_one(n).div_t().unwrap();
        assert_eq!(f, exp_minus_one_over_t(n - 1));
        assert_eq!(exp_t(n).div_t(), Err(Error::NotInvertible));
    }

    #[test]
    fn standard_series_agree_with_generic_ops() {
        let n = 8;
        assert_eq!(log_one_plus_over_t(n - 1), log_one_plus(n).div_t().unwrap());
        assert_eq!(exp_scaled(&int(3), n), Series::t(n).scale(&int(3)).exp().unwrap());
    }

    const PN: usize = 8;

    fn coeffs() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-9i64..10, 1i64..5), PN + 1)
            .prop_map(|v| v.into_iter().map(|(a, b)| rat(a, b)).collect())
    }

    fn any_series() -> impl Strategy<Value = Series> {
        coeffs().prop_map(|c| Series::new(c, PN))
    }

    fn unit_series() -> impl Strategy<Value = Series> {
        coeffs().prop_map(|mut c| {
            c[0] = int(1);
            Series::new(c, PN)
        })
    }

    fn delta_series() -> impl Strategy<Value = Series> {
        (coeffs(), prop_oneof![-4i64..0, 1i64..5]).prop_map(|(mut c, lead)| {
            c[0] = int(0);
            c[1] = int(lead);
            Series::new(c, PN)
        })
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..7, 1i64..4).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #[test]
        fn ring_axioms(f in any_series(), g in any_series(), h in any_series()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f + &g, &g + &f);
        }

        #[test]
        fn inverse_round_trip(f in delta_series()) {
            let fbar = f.comp_inverse().unwrap();
            let t = Series::t(PN);
            prop_assert_eq!(f.compose(&fbar).unwrap(), t.clone());
            prop_assert_eq!(fbar.compose(&f).unwrap(), t);
        }

        #[test]
        fn reciprocal_round_trip(mut f in any_series(), c0 in prop_oneof![-5i64..0, 1i64..6]) {
            f = &f + &Series::constant(int(c0) - f.coeff(0), PN);
            prop_assert_eq!(&f * &f.reciprocal().unwrap(), Series::one(PN));
        }

        #[test]
        fn powers_add(f in unit_series(), a in small_rational(), b in small_rational()) {
            let lhs = &f.pow(&a).unwrap() * &f.pow(&b).unwrap();
            prop_assert_eq!(lhs, f.pow(&(a + b)).unwrap());
        }

        #[test]
        fn exp_log_inverse(f in unit_series()) {
            prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
        }

        #[test]
        fn order_of_product(f in any_series(), g in any_series(), i in 0usize..4, j in 0usize..4) {
            let (f, g) = (f.mul_t(i), g.mul_t(j));
            if let (Some(a), Some(b)) = (f.order(), g.order()) {
                if a + b <= PN {
                    prop_assert_eq!((&f * &g).order(), Some(a + b));
                }
            }
        }
    }
}
