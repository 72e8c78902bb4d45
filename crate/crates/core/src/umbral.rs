//! Sheffer sequences from a pair `(g, f)`, built two independent ways: from
//! the generating function `e^{y f̄(t)} / g(f̄(t))` and from the transfer
//! formula `q_n = x (f/g)^n x^{-1} p_n`.

use num_traits::Zero;

use crate::arith::{binom_int, factorial, Rational};
use crate::error::{Error, Result};
use crate::operator::{apply_operator, pairing};
use crate::poly::{BivariatePolynomial, Polynomial};
use crate::series::Series;

/// Series in `t` whose coefficients are polynomials in `y`.
pub type BivariateSeries = Series<Polynomial>;

/// An invertible series `g` and a delta series `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShefferPair {
    g: Series,
    f: Series,
}

impl ShefferPair {
    pub fn new(g: Series, f: Series) -> Result<Self> {
        if g.order() != Some(0) {
            return Err(Error::NotInvertible);
        }
        if f.order() != Some(1) {
            return Err(Error::NotDelta {
                order: f.order().map_or("infinity".into(), |o| o.to_string()),
            });
        }
        Ok(ShefferPair { g, f })
    }

    /// The pair `(1, f)` whose Sheffer sequence is the associated sequence of `f`.
    pub fn associated(f: Series) -> Result<Self> {
        let n = f.trunc_order();
        Self::new(Series::one(n), f)
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn trunc_order(&self) -> usize {
        self.g.trunc_order().min(self.f.trunc_order())
    }

    /// Drops both series to order `n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        Ok(ShefferPair {
            g: self.g.truncate(n)?,
            f: self.f.truncate(n)?,
        })
    }
}

/// `e^{y u(t)}` for `u` without constant term, expanded as the finite sum
/// `Σ_k u^k y^k / k!` (only `k <= N` reaches `t^N`).
pub fn exp_linear(u: &Series) -> Result<BivariateSeries> {
    if !u.coeff(0).is_zero() {
        return Err(Error::CompositionNeedsDelta);
    }
    let n = u.trunc_order();
    // rows[k][j] = [t^j] u^k / k!
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    let mut power = Series::<Rational>::one(n);
    for k in 0..=n {
        let inv_fact = factorial(k).recip();
        rows.push(power.coeffs().iter().map(|c| c * &inv_fact).collect());
        power = &power * u;
    }
    let cols = (0..=n)
        .map(|j| Polynomial::new(rows.iter().map(|r| r.get(j).cloned().unwrap_or_else(Rational::zero)).collect()))
        .collect();
    Ok(Series::new(cols, n))
}

/// Promotes a rational series to one with constant polynomial coefficients.
pub fn lift(s: &Series) -> BivariateSeries {
    s.map(|c| Polynomial::constant(c.clone()))
}

/// `n! [t^n]` of a generating series, the usual exponential-generating
/// function read-out.
pub fn egf_coefficient(gf: &BivariateSeries, n: usize) -> Result<Polynomial> {
    if gf.trunc_order() < n {
        return Err(Error::SeriesTooShort {
            needed: n,
            available: gf.trunc_order(),
        });
    }
    Ok(gf.coeff(n).scale(&factorial(n)))
}

/// `e^{y f̄(t)} / g(f̄(t))`.
pub fn sheffer_generating_series(pair: &ShefferPair) -> Result<BivariateSeries> {
    let fbar = pair.f.comp_inverse()?;
    let h = pair.g.compose(&fbar)?.reciprocal()?;
    Ok(&lift(&h) * &exp_linear(&fbar)?)
}

/// `S_n` with `S_n ~ (g, f)`, from the generating function.
pub fn sheffer_sequence(pair: &ShefferPair, n: usize) -> Result<Polynomial> {
    let pair = pair.truncate(n.max(1)).map_err(|_| Error::SeriesTooShort {
        needed: n,
        available: pair.trunc_order(),
    })?;
    egf_coefficient(&sheffer_generating_series(&pair)?, n)
}

/// `S_0, ..., S_{n_max}` sharing one generating-series expansion.
pub fn sheffer_sequences(pair: &ShefferPair, n_max: usize) -> Result<Vec<Polynomial>> {
    let pair = pair.truncate(n_max.max(1)).map_err(|_| Error::SeriesTooShort {
        needed: n_max,
        available: pair.trunc_order(),
    })?;
    let gf = sheffer_generating_series(&pair)?;
    (0..=n_max).map(|n| egf_coefficient(&gf, n)).collect()
}

/// Associated sequence `p_n ~ (1, f)`.
pub fn associated_sequence(f: &Series, n: usize) -> Result<Polynomial> {
    sheffer_sequence(&ShefferPair::associated(f.clone())?, n)
}

/// `f(t)/g(t)` for two delta series, with the common factor `t` cancelled.
fn delta_ratio(f: &Series, g: &Series) -> Result<Series> {
    for s in [f, g] {
        if s.order() != Some(1) {
            return Err(Error::NotDelta {
                order: s.order().map_or("infinity".into(), |o| o.to_string()),
            });
        }
    }
    Ok(&f.div_t()? * &g.div_t()?.reciprocal()?)
}

/// Transfer formula: given `p_n ~ (1, f)`, returns `q_n ~ (1, g)` as
/// `x (f/g)^n x^{-1} p_n`.
pub fn transfer(f: &Series, g: &Series, n: usize, p_n: &Polynomial) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "transfer formula needs n >= 1".into(),
        ));
    }
    let reduced = p_n.div_by_x()?;
    let ratio = delta_ratio(f, g)?.pow_usize(n);
    Ok(apply_operator(&ratio, &reduced)?.mul_by_x())
}

/// Transfer from `x^n ~ (1, t)` to the associated sequence of `g`.
pub fn transfer_from_monomial(g: &Series, n: usize) -> Result<Polynomial> {
    let t = Series::t(g.trunc_order());
    transfer(&t, g, n, &Polynomial::x_pow(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Duality {
    Holds,
    /// First `(n, k)` with `⟨g f^k | S_n⟩ != n! δ_{n,k}`.
    Broken { n: usize, k: usize },
}

impl Duality {
    pub fn holds(&self) -> bool {
        matches!(self, Duality::Holds)
    }
}

/// Checks `⟨g f^k | S_n⟩ = n! δ_{n,k}` for `0 <= n, k <= n_max`.
pub fn duality_check(pair: &ShefferPair, seq: &[Polynomial], n_max: usize) -> Result<Duality> {
    if seq.len() <= n_max {
        return Err(Error::InvalidParameter(format!(
            "need {} sequence terms, got {}",
            n_max + 1,
            seq.len()
        )));
    }
    let mut op = pair.g.clone();
    for k in 0..=n_max {
        for (n, s) in seq[..=n_max].iter().enumerate() {
            let expect = if n == k { factorial(n) } else { Rational::zero() };
            if pairing(&op, s)? != expect {
                return Ok(Duality::Broken { n, k });
            }
        }
        op = &op * &pair.f;
    }
    Ok(Duality::Holds)
}

/// Both sides of `S_n(x + y) = Σ_k binom(n, k) p_k(y) S_{n-k}(x)` with
/// `seq[k] = S_k` and `assoc[k] = p_k`.
pub fn binomial_convolution_sides(
    seq: &[Polynomial],
    assoc: &[Polynomial],
    n: usize,
) -> (BivariatePolynomial, BivariatePolynomial) {
    let lhs = seq[n].shift_symbolic();
    let rhs: BivariatePolynomial = (0..=n)
        .map(|k| {
            let weight = binom_int(n as i64, k as i64);
            let py = assoc[k].scale(&weight);
            // p_k(y) S_{n-k}(x): x-coefficients of S_{n-k} times a y-polynomial
            seq[n - k].map(|c| py.scale(c))
        })
        .sum();
    (lhs, rhs)
}

/// Verifies the binomial convolution for `S_n ~ (g, f)` with
/// `p_k = g(t) S_k`.
pub fn binomial_convolution_check(pair: &ShefferPair, n: usize) -> Result<bool> {
    let seq = sheffer_sequences(pair, n)?;
    let assoc = seq
        .iter()
        .map(|s| apply_operator(pair.g(), s))
        .collect::<Result<Vec<_>>>()?;
    let (lhs, rhs) = binomial_convolution_sides(&seq, &assoc, n);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::series::standard::*;
    use num_traits::One;
    use proptest::prelude::*;

    const N: usize = 12;

    fn inverse_power(c: &Rational, n: usize) -> Rational {
        crate::arith::pow_int(c, -(n as i64))
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn trivial_pair_gives_monomials() {
        let pair = ShefferPair::associated(Series::t(N)).unwrap();
        for n in 0..=8 {
            assert_eq!(sheffer_sequence(&pair, n).unwrap(), Polynomial::x_pow(n));
        }
    }

    #[test]
    fn bernoulli_pair() {
        let pair = ShefferPair::new(exp_minus_one_over_t(N), Series::t(N)).unwrap();
        assert_eq!(
            sheffer_sequence(&pair, 2).unwrap(),
            Polynomial::new(vec![rat(1, 6), int(-1), int(1)])
        );
    }

    #[test]
    fn pidduck_first_term() {
        let e = exp_t(N);
        let plus = &e + &Series::one(N);
        let g = plus.reciprocal().unwrap().scale(&int(2));
        let f = &exp_minus_one(N) * &plus.reciprocal().unwrap();
        let pair = ShefferPair::new(g, f).unwrap();
        assert_eq!(sheffer_sequence(&pair, 1).unwrap(), p(&[1, 2]));
    }

    #[test]
    fn associated_examples() {
        assert_eq!(associated_sequence(&Series::t(N), 5).unwrap(), Polynomial::x_pow(5));
        assert_eq!(associated_sequence(&exp_minus_one(N), 2).unwrap(), p(&[0, -1, 1]));
        // exponential polynomials: S2(4, k) = 0, 1, 7, 6, 1
        assert_eq!(
            associated_sequence(&log_one_plus(N), 4).unwrap(),
            p(&[0, 1, 7, 6, 1])
        );
        assert_eq!(associated_sequence(&log_one_plus(N), 0).unwrap(), p(&[1]));
    }

    #[test]
    fn leading_coefficient_and_constant_term() {
        let f = Series::new(vec![int(0), int(3), int(1), int(-2)], N);
        for n in 1..=6 {
            let s = associated_sequence(&f, n).unwrap();
            assert_eq!(s.degree(), Some(n));
            assert_eq!(s.coeff(n), inverse_power(&int(3), n));
            assert_eq!(s.coeff(0), int(0));
        }
    }

    #[test]
    fn transfer_examples() {
        let t = Series::t(N);
        let abel = &t * &exp_t(N);
        assert_eq!(
            transfer(&t, &abel, 2, &Polynomial::x_pow(2)).unwrap(),
            p(&[0, -2, 1])
        );
        let g = exp_minus_one(N);
        let p3 = associated_sequence(&g, 3).unwrap();
        assert_eq!(transfer(&g, &g, 3, &p3).unwrap(), p3);
        let bessel = Series::new(vec![int(0), int(1), rat(-1, 2)], N);
        assert_eq!(transfer_from_monomial(&bessel, 2).unwrap(), p(&[0, 1, 1]));
    }

    #[test]
    fn transfer_errors() {
        let t = Series::<Rational>::t(N);
        assert!(matches!(
            transfer(&t, &t, 2, &p(&[1, 0, 1])),
            Err(Error::XInverseUndefined { .. })
        ));
        assert!(matches!(
            transfer(&t, &exp_t(N), 2, &Polynomial::x_pow(2)),
            Err(Error::NotDelta { .. })
        ));
    }

    #[test]
    fn pair_validation() {
        assert_eq!(
            ShefferPair::new(Series::t(N), Series::t(N)),
            Err(Error::NotInvertible)
        );
        assert!(matches!(
            ShefferPair::new(Series::one(N), Series::one(N)),
            Err(Error::NotDelta { .. })
        ));
    }

    #[test]
    fn duality_examples() {
        let pair = ShefferPair::associated(Series::t(N)).unwrap();
        let mono: Vec<_> = (0..=6).map(Polynomial::x_pow).collect();
        assert_eq!(duality_check(&pair, &mono, 6).unwrap(), Duality::Holds);

        let abel_f = &Series::t(N) * &exp_scaled(&int(2), N);
        let abel = ShefferPair::associated(abel_f.clone()).unwrap();
        let seq: Vec<_> = (0..=6)
            .map(|n| {
                if n == 0 {
                    Polynomial::one()
                } else {
                    // x (x - 2n)^{n-1}
                    p(&[-2 * n as i64, 1]).pow(n - 1).mul_by_x()
                }
            })
            .collect();
        assert_eq!(duality_check(&abel, &seq, 6).unwrap(), Duality::Holds);

        let bad = vec![p(&[1]), p(&[0, 1]), p(&[1, 0, 1])];
        assert_eq!(
            duality_check(&pair, &bad, 2).unwrap(),
            Duality::Broken { n: 2, k: 0 }
        );
    }

    #[test]
    fn convolution_examples() {
        let trivial = ShefferPair::associated(Series::t(N)).unwrap();
        let abel = ShefferPair::associated(&Series::t(N) * &exp_t(N)).unwrap();
        let bessel =
            ShefferPair::associated(Series::new(vec![int(0), int(1), rat(-1, 2)], N)).unwrap();
        let bern = ShefferPair::new(exp_minus_one_over_t(N), Series::t(N)).unwrap();
        for n in 0..=6 {
            assert!(binomial_convolution_check(&trivial, n).unwrap());
            assert!(binomial_convolution_check(&abel, n).unwrap());
            assert!(binomial_convolution_check(&bessel, n).unwrap());
            assert!(binomial_convolution_check(&bern, n).unwrap());
        }
    }

    #[test]
    fn insufficient_order_is_reported() {
        let pair = ShefferPair::associated(exp_minus_one(3)).unwrap();
        assert!(sheffer_sequence(&pair, 5).unwrap_err().is_insufficient_order());
    }

    #[test]
    fn exp_linear_matches_scalar_exp() {
        let u = log_one_plus(N);
        let gf = exp_linear(&u).unwrap();
        // y = 1: e^{log(1+t)} = 1 + t
        let at_one = gf.map(|c| c.eval(&int(1)));
        assert_eq!(at_one, linear(&int(1), N));
    }

    fn random_pair(n: usize) -> impl Strategy<Value = ShefferPair> {
        let c = prop::collection::vec((-6i64..7, 1i64..4), n + 1);
        (c.clone(), c, prop_oneof![-3i64..0, 1i64..4], prop_oneof![-3i64..0, 1i64..4]).prop_map(
            move |(gc, fc, g0, f1)| {
                let mut g: Vec<Rational> = gc.into_iter().map(|(a, b)| rat(a, b)).collect();
                let mut f: Vec<Rational> = fc.into_iter().map(|(a, b)| rat(a, b)).collect();
                g[0] = int(g0);
                f[0] = int(0);
                f[1] = int(f1);
                ShefferPair::new(Series::new(g, n), Series::new(f, n)).unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn transfer_agrees_with_generating_function(pair in random_pair(6)) {
            let seq = sheffer_sequences(&ShefferPair::associated(pair.f().clone()).unwrap(), 6).unwrap();
            for (n, p) in seq.iter().enumerate().skip(1) {
                prop_assert_eq!(&transfer_from_monomial(pair.f(), n).unwrap(), p);
            }
        }

        #[test]
        fn generated_sequences_are_dual(pair in random_pair(6)) {
            let seq = sheffer_sequences(&pair, 6).unwrap();
            prop_assert!(duality_check(&pair, &seq, 6).unwrap().holds());
        }

        #[test]
        fn generated_sequences_convolve(pair in random_pair(5)) {
            prop_assert!(binomial_convolution_check(&pair, 5).unwrap());
        }
    }
}
