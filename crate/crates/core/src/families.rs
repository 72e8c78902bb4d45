//! Named polynomial families and number triangles.
//!
//! Each family has a closed form (as a polynomial in `x`) and, where one
//! exists, a Sheffer pair, so the two can be checked against each other.
//! Families whose only explicit description is a generating function use
//! that generating function as their closed form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{
    binom, binom_int, factorial, falling, format_rational, int, is_positive_integer, neg_one_pow,
    pow_int, rat, Rational,
};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::{standard, Series};
use crate::umbral::{egf_coefficient, exp_linear, lift, BivariateSeries, ShefferPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Bernoulli,
    Euler,
    PoissonCharlier,
    Abel,
    MittagLeffler,
    Exponential,
    Laguerre,
    LaguerreReflected,
    LaguerreAlpha,
    BesselY,
    BesselP,
    Mott,
    Pidduck,
    Narumi,
    Actuarial,
    AssocCExp,
    AssocHalved,
    AssocShiftedPower,
    AssocBernoulliLike,
    AssocEulerLike,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    A,
    B,
    C,
    R,
    Alpha,
    Beta,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
            Param::R => "r",
            Param::Alpha => "alpha",
            Param::Beta => "beta",
        }
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a" => Param::A,
            "b" => Param::B,
            "c" => Param::C,
            "r" => Param::R,
            "alpha" => Param::Alpha,
            "beta" => Param::Beta,
            _ => return Err(Error::InvalidParameter(format!("unknown parameter `{s}`"))),
        })
    }
}

/// What a family's parameter must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Constraint {
    Any,
    Nonzero,
    PositiveInteger,
}

impl Family {
    pub const ALL: [Family; 20] = [
        Family::Bernoulli,
        Family::Euler,
        Family::PoissonCharlier,
        Family::Abel,
        Family::MittagLeffler,
        Family::Exponential,
        Family::Laguerre,
        Family::LaguerreReflected,
        Family::LaguerreAlpha,
        Family::BesselY,
        Family::BesselP,
        Family::Mott,
        Family::Pidduck,
        Family::Narumi,
        Family::Actuarial,
        Family::AssocCExp,
        Family::AssocHalved,
        Family::AssocShiftedPower,
        Family::AssocBernoulliLike,
        Family::AssocEulerLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bernoulli => "bernoulli",
            Family::Euler => "euler",
            Family::PoissonCharlier => "poisson_charlier",
            Family::Abel => "abel",
            Family::MittagLeffler => "mittag_leffler",
            Family::Exponential => "exponential",
            Family::Laguerre => "laguerre",
            Family::LaguerreReflected => "laguerre_reflected",
            Family::LaguerreAlpha => "laguerre_alpha",
            Family::BesselY => "bessel_y",
            Family::BesselP => "bessel_p",
            Family::Mott => "mott",
            Family::Pidduck => "pidduck",
            Family::Narumi => "narumi",
            Family::Actuarial => "actuarial",
            Family::AssocCExp => "assoc_c_exp",
            Family::AssocHalved => "assoc_halved",
            Family::AssocShiftedPower => "assoc_shifted_power",
            Family::AssocBernoulliLike => "assoc_bernoulli_like",
            Family::AssocEulerLike => "assoc_euler_like",
        }
    }

    fn params(self) -> &'static [(Param, Constraint)] {
        use Constraint::*;
        match self {
            Family::Bernoulli | Family::Euler => &[(Param::R, Any)],
            Family::PoissonCharlier | Family::AssocShiftedPower => &[(Param::A, Nonzero)],
            Family::Abel => &[(Param::B, Nonzero)],
            Family::AssocCExp => &[(Param::C, Nonzero)],
            Family::LaguerreAlpha => &[(Param::Alpha, Any)],
            Family::Narumi => &[(Param::A, Any)],
            Family::Actuarial => &[(Param::Beta, Any)],
            Family::AssocBernoulliLike => &[(Param::A, PositiveInteger)],
            Family::AssocEulerLike => &[(Param::B, PositiveInteger)],
            _ => &[],
        }
    }

    pub fn required_params(self) -> Vec<Param> {
        self.params().iter().map(|(p, _)| *p).collect()
    }

    /// True when `S_0 = 1` is the only sensible value and the printed
    /// formula starts at `n = 1`.
    fn is_associated(self) -> bool {
        matches!(
            self,
            Family::Abel
                | Family::Laguerre
                | Family::LaguerreReflected
                | Family::BesselP
                | Family::Mott
                | Family::AssocCExp
                | Family::AssocHalved
                | Family::AssocShiftedPower
                | Family::AssocBernoulliLike
                | Family::AssocEulerLike
        )
    }

    /// Whether the family is a Sheffer sequence with a known pair.
    pub fn has_pair(self) -> bool {
        !matches!(self, Family::BesselY)
    }

    /// Whether a generating function in closed form is available.
    pub fn has_generating_function(self) -> bool {
        matches!(
            self,
            Family::Bernoulli
                | Family::Euler
                | Family::Exponential
                | Family::BesselP
                | Family::Mott
                | Family::Pidduck
                | Family::Narumi
                | Family::Actuarial
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family together with validated parameter values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilySpec {
    family: Family,
    params: BTreeMap<Param, Rational>,
}

impl FamilySpec {
    pub fn new(family: Family, params: impl IntoIterator<Item = (Param, Rational)>) -> Result<Self> {
        let params: BTreeMap<Param, Rational> = params.into_iter().collect();
        let allowed = family.params();
        for p in params.keys() {
            if !allowed.iter().any(|(q, _)| q == p) {
                return Err(Error::InvalidParameter(format!(
                    "family {family} does not take parameter {}",
                    p.name()
                )));
            }
        }
        for (p, c) in allowed {
            let v = params.get(p).ok_or_else(|| {
                Error::InvalidParameter(format!("family {family} needs parameter {}", p.name()))
            })?;
            match c {
                Constraint::Any => {}
                Constraint::Nonzero if v.is_zero() => {
                    return Err(Error::InvalidParameter(format!(
                        "parameter {} must be nonzero",
                        p.name()
                    )))
                }
                Constraint::PositiveInteger if !is_positive_integer(v) => {
                    return Err(Error::InvalidParameter(format!(
                        "parameter {} must be a positive integer",
                        p.name()
                    )))
                }
                _ => {}
            }
        }
        Ok(FamilySpec { family, params })
    }

    /// Shorthand for families without parameters.
    pub fn plain(family: Family) -> Result<Self> {
        Self::new(family, [])
    }

    pub fn with(family: Family, p: Param, v: Rational) -> Result<Self> {
        Self::new(family, [(p, v)])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &BTreeMap<Param, Rational> {
        &self.params
    }

    fn get(&self, p: Param) -> &Rational {
        // presence is checked at construction
        &self.params[&p]
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.name())?;
        for (p, v) in &self.params {
            write!(f, " {}={}", p.name(), format_rational(v))?;
        }
        Ok(())
    }
}

/// Signed Stirling numbers of the first kind, rows `0..=n`.
fn stirling1_rows(n: usize) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![Rational::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|k| {
                let a = if k >= 1 { prev[k - 1].clone() } else { Rational::zero() };
                let b = prev.get(k).cloned().unwrap_or_else(Rational::zero);
                a - int(m as i64 - 1) * b
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Stirling numbers of the second kind, rows `0..=n`.
fn stirling2_rows(n: usize) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![Rational::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|k| {
                let a = if k >= 1 { prev[k - 1].clone() } else { Rational::zero() };
                let b = prev.get(k).cloned().unwrap_or_else(Rational::zero);
                a + int(k as i64) * b
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `S₂(n, k)` by the triangular recurrence; zero outside `0 <= k <= n`.
pub fn stirling2(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::zero();
    }
    stirling2_rows(n as usize)[n as usize][k as usize].clone()
}

/// Signed `S₁(n, k)` with `(x)_n = Σ_k S₁(n, k) x^k`; zero outside `0 <= k <= n`.
pub fn stirling1(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::zero();
    }
    stirling1_rows(n as usize)[n as usize][k as usize].clone()
}

/// `n! Σ_k g_{n-k} x^k / k!` where `g` is the prefactor of `e^{xt}`.
fn appell_polynomial(prefactor: &Series, n: usize) -> Polynomial {
    let nf = factorial(n);
    Polynomial::new(
        (0..=n)
            .map(|k| &nf / factorial(k) * prefactor.coeff(n - k))
            .collect(),
    )
}

/// `(t/(e^t-1))^r`.
fn bernoulli_prefactor(r: &Rational, n: usize) -> Result<Series> {
    standard::exp_minus_one_over_t(n).pow(&-r)
}

/// `(2/(e^t+1))^r`.
fn euler_prefactor(r: &Rational, n: usize) -> Result<Series> {
    standard::exp_plus_one_half(n).pow(&-r)
}

/// Bernoulli polynomial of order `r`.
pub fn bernoulli_poly(r: &Rational, n: usize) -> Polynomial {
    let pre = bernoulli_prefactor(r, n).expect("constant term is one");
    appell_polynomial(&pre, n)
}

/// Euler polynomial of order `r`.
pub fn euler_poly(r: &Rational, n: usize) -> Polynomial {
    let pre = euler_prefactor(r, n).expect("constant term is one");
    appell_polynomial(&pre, n)
}

/// `N_k^{(a)} = k! [t^k] (log(1+t)/t)^a`.
pub fn narumi_number(a: &Rational, k: usize) -> Rational {
    let s = standard::log_one_plus_over_t(k)
        .pow(a)
        .expect("constant term is one");
    factorial(k) * s.coeff(k)
}

/// Bessel polynomial `y_n(x) = Σ_k (n+k)! / ((n-k)! k!) (x/2)^k`.
pub fn bessel_y(n: usize) -> Polynomial {
    Polynomial::new(
        (0..=n)
            .map(|k| {
                factorial(n + k) / (factorial(n - k) * factorial(k)) * pow_int(&rat(1, 2), k as i64)
            })
            .collect(),
    )
}

/// `x² y'' + (2x + 2) y' + sign · n(n+1) y` for `y = y_n`.
pub fn bessel_ode_residual(n: usize, sign: i64) -> Polynomial {
    let y = bessel_y(n);
    let d1 = y.derivative();
    let d2 = d1.derivative();
    let x2 = Polynomial::x_pow(2);
    let lin = Polynomial::from_ints(&[2, 2]);
    let k = int(sign * (n as i64) * (n as i64 + 1));
    &(&(&x2 * &d2) + &(&lin * &d1)) + &y.scale(&k)
}

/// Poisson–Charlier `C_n(x; a)` at a rational point.
pub fn poisson_charlier_value(n: usize, x0: &Rational, a: &Rational) -> Rational {
    (0..=n)
        .map(|k| {
            let sign = neg_one_pow(n - k);
            binom_int(n as i64, k as i64) * sign * pow_int(a, -(k as i64)) * falling(x0, k)
        })
        .sum()
}

/// The Sheffer pair of a family with all series at order `n`.
pub fn family_pair(spec: &FamilySpec, n: usize) -> Result<ShefferPair> {
    use standard::*;
    let one = Series::one(n);
    let t = Series::<Rational>::t(n);
    let e = exp_t(n);
    let em1 = exp_minus_one(n);
    let ep1 = &e + &one;
    let (g, f) = match spec.family {
        Family::Bernoulli => (exp_minus_one_over_t(n).pow(spec.get(Param::R))?, t),
        Family::Euler => (exp_plus_one_half(n).pow(spec.get(Param::R))?, t),
        Family::PoissonCharlier => {
            let af = em1.scale(spec.get(Param::A));
            (af.exp()?, af)
        }
        Family::Abel => (one, &t * &exp_scaled(spec.get(Param::B), n)),
        Family::MittagLeffler => (one, &em1 * &ep1.reciprocal()?),
        Family::Exponential => (one, log_one_plus(n)),
        Family::Laguerre => (one, -(&t * &linear(&int(-1), n).reciprocal()?)),
        Family::LaguerreReflected => (one, &t * &linear(&int(1), n).reciprocal()?),
        Family::LaguerreAlpha => {
            let expo = -spec.get(Param::Alpha) - int(1);
            (
                linear(&int(-1), n).pow(&expo)?,
                -(&t * &linear(&int(-1), n).reciprocal()?),
            )
        }
        Family::BesselY => {
            return Err(Error::InvalidParameter(
                "bessel_y is not a Sheffer sequence".into(),
            ))
        }
        Family::BesselP => (one, Series::new(vec![int(0), int(1), rat(-1, 2)], n)),
        Family::Mott => {
            let denom = Series::new(vec![int(1), int(0), int(-1)], n).reciprocal()?;
            (one, (&t * &denom).scale(&int(-2)))
        }
        Family::Pidduck => {
            let inv = ep1.reciprocal()?;
            (inv.scale(&int(2)), &em1 * &inv)
        }
        Family::Narumi => (exp_minus_one_over_t(n).pow(spec.get(Param::A))?, em1),
        Family::Actuarial => {
            let expo = -spec.get(Param::Beta);
            (
                linear(&int(-1), n).pow(&expo)?,
                linear(&int(-1), n).log()?,
            )
        }
        Family::AssocCExp => (one, &t * &em1.scale(spec.get(Param::C)).exp()?),
        Family::AssocHalved => (one, (&t * &ep1.reciprocal()?).scale(&int(2))),
        Family::AssocShiftedPower => (one, &t * &linear(&int(1), n).pow(spec.get(Param::A))?),
        Family::AssocBernoulliLike => (
            one,
            &t * &exp_minus_one_over_t(n).pow(spec.get(Param::A))?,
        ),
        Family::AssocEulerLike => (one, &t * &exp_plus_one_half(n).pow(spec.get(Param::B))?),
    };
    ShefferPair::new(g, f)
}

/// The family's printed generating function `Σ S_k(x) t^k / k!`, at order `n`.
pub fn family_generating_function(spec: &FamilySpec, n: usize) -> Result<BivariateSeries> {
    use standard::*;
    let one = Series::<Rational>::one(n);
    let t = Series::<Rational>::t(n);
    match spec.family {
        Family::Bernoulli => Ok(&lift(&bernoulli_prefactor(spec.get(Param::R), n)?) * &exp_linear(&t)?),
        Family::Euler => Ok(&lift(&euler_prefactor(spec.get(Param::R), n)?) * &exp_linear(&t)?),
        Family::Exponential => exp_linear(&exp_minus_one(n)),
        Family::BesselP => {
            let root = linear(&int(-2), n).pow(&rat(1, 2))?;
            exp_linear(&(&one - &root))
        }
        Family::Mott => {
            // (1 - sqrt(1 + t^2)) / t, computed one order higher before dividing
            let root = Series::new(vec![int(1), int(0), int(1)], n + 1).pow(&rat(1, 2))?;
            let u = (&Series::one(n + 1) - &root).div_t()?;
            exp_linear(&u)
        }
        Family::Pidduck => {
            let pre = linear(&int(-1), n).reciprocal()?;
            let u = &log_one_plus(n) - &linear(&int(-1), n).log()?;
            Ok(&lift(&pre) * &exp_linear(&u)?)
        }
        Family::Narumi => {
            let pre = log_one_plus_over_t(n).pow(spec.get(Param::A))?;
            Ok(&lift(&pre) * &exp_linear(&log_one_plus(n))?)
        }
        Family::Actuarial => {
            let pre = exp_scaled(spec.get(Param::Beta), n);
            let u = &one - &exp_t(n);
            Ok(&lift(&pre) * &exp_linear(&u)?)
        }
        f => Err(Error::InvalidParameter(format!(
            "no generating function registered for {f}"
        ))),
    }
}

/// Stirling triangles and the family closed forms, read through one context
/// so that a corrupted entry propagates into every formula that uses it.
///
/// Triangles are precomputed up to the requested size; lookups beyond it are
/// computed on demand. The value is immutable once built.
#[derive(Clone, Debug, Default)]
pub struct Tables {
    s1: Vec<Vec<Rational>>,
    s2: Vec<Vec<Rational>>,
    #[cfg(feature = "fault-injection")]
    faults: Faults,
}

/// Deliberate corruptions used to confirm that checks are sensitive to the
/// tables they read.
#[cfg(feature = "fault-injection")]
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Faults {
    /// `(n, k, value)` replaces `S₂(n, k)`.
    pub stirling2: Vec<(i64, i64, Rational)>,
    /// `(n, k, value)` replaces `S₁(n, k)`.
    pub stirling1: Vec<(i64, i64, Rational)>,
    /// `(a, k, value)` replaces `N_k^{(a)}`.
    pub narumi_numbers: Vec<(Rational, usize, Rational)>,
    /// `(family, n, k, delta)` adds `delta` to `[x^k]` of the closed form at index `n`.
    pub family_coefficients: Vec<(Family, usize, usize, Rational)>,
}

impl Tables {
    pub fn new(size: usize) -> Self {
        Tables {
            s1: stirling1_rows(size),
            s2: stirling2_rows(size),
            #[cfg(feature = "fault-injection")]
            faults: Faults::default(),
        }
    }

    #[cfg(feature = "fault-injection")]
    pub fn with_faults(size: usize, faults: Faults) -> Self {
        Tables {
            faults,
            ..Tables::new(size)
        }
    }

    pub fn stirling2(&self, n: i64, k: i64) -> Rational {
        #[cfg(feature = "fault-injection")]
        if let Some((_, _, v)) = self.faults.stirling2.iter().find(|(a, b, _)| (*a, *b) == (n, k)) {
            return v.clone();
        }
        lookup(&self.s2, n, k).unwrap_or_else(|| stirling2(n, k))
    }

    pub fn stirling1(&self, n: i64, k: i64) -> Rational {
        #[cfg(feature = "fault-injection")]
        if let Some((_, _, v)) = self.faults.stirling1.iter().find(|(a, b, _)| (*a, *b) == (n, k)) {
            return v.clone();
        }
        lookup(&self.s1, n, k).unwrap_or_else(|| stirling1(n, k))
    }

    pub fn narumi_number(&self, a: &Rational, k: usize) -> Rational {
        #[cfg(feature = "fault-injection")]
        if let Some((_, _, v)) = self
            .faults
            .narumi_numbers
            .iter()
            .find(|(b, j, _)| b == a && *j == k)
        {
            return v.clone();
        }
        narumi_number(a, k)
    }

    pub fn family_polynomial(&self, spec: &FamilySpec, n: usize) -> Result<Polynomial> {
        let p = closed_form(spec, n, self)?;
        #[cfg(feature = "fault-injection")]
        let p = self.faults.family_coefficients.iter().fold(p, |p, (fam, m, k, delta)| {
            if *fam == spec.family && *m == n {
                &p + &Polynomial::monomial(delta.clone(), *k)
            } else {
                p
            }
        });
        Ok(p)
    }
}

fn lookup(rows: &[Vec<Rational>], n: i64, k: i64) -> Option<Rational> {
    if n < 0 || k < 0 || k > n {
        return Some(Rational::zero());
    }
    rows.get(n as usize).map(|row| row[k as usize].clone())
}

/// The family's closed form at index `n`.
pub fn family_polynomial(spec: &FamilySpec, n: usize) -> Result<Polynomial> {
    closed_form(spec, n, &Tables::default())
}

fn closed_form(spec: &FamilySpec, n: usize, nums: &Tables) -> Result<Polynomial> {
    let fam = spec.family;
    if n == 0 && fam.is_associated() {
        return Ok(Polynomial::one());
    }
    let x = Polynomial::x();
    let ni = n as i64;
    let p = match fam {
        Family::Bernoulli => bernoulli_poly(spec.get(Param::R), n),
        Family::Euler => euler_poly(spec.get(Param::R), n),
        Family::PoissonCharlier => {
            let a = spec.get(Param::A);
            (0..=n)
                .map(|k| {
                    let sign = neg_one_pow(n - k);
                    let w = binom_int(ni, k as i64) * sign * pow_int(a, -(k as i64));
                    Polynomial::falling_factorial(k).scale(&w)
                })
                .sum()
        }
        Family::Abel => {
            let b = spec.get(Param::B);
            let base = Polynomial::new(vec![-(b * int(ni)), int(1)]);
            base.pow(n - 1).mul_by_x()
        }
        Family::MittagLeffler => (0..=n)
            .map(|k| {
                let w = binom_int(ni, k as i64) * falling(&int(ni - 1), n - k) * pow_int(&int(2), k as i64);
                Polynomial::falling_factorial(k).scale(&w)
            })
            .sum(),
        Family::Exponential => Polynomial::new((0..=n).map(|k| nums.stirling2(ni, k as i64)).collect()),
        Family::Laguerre => laguerre(n),
        Family::LaguerreReflected => laguerre(n).reflect(),
        Family::LaguerreAlpha => {
            let alpha = spec.get(Param::Alpha);
            let nf = factorial(n);
            Polynomial::new(
                (0..=n)
                    .map(|l| {
                        let sign = neg_one_pow(l);
                        binom(&(int(ni) + alpha), n - l) * &nf / factorial(l) * sign
                    })
                    .collect(),
            )
        }
        Family::BesselY => bessel_y(n),
        Family::BesselP => Polynomial::new(
            (0..=n)
                .map(|k| {
                    if k == 0 {
                        return Rational::zero();
                    }
                    factorial(2 * n - k - 1) / (factorial(n - k) * factorial(k - 1))
                        * pow_int(&rat(1, 2), (n - k) as i64)
                })
                .collect(),
        ),
        Family::Mott => {
            let mut acc = Polynomial::zero();
            let xm1 = Polynomial::from_ints(&[-1, 1]);
            for k in 0..n {
                let c = poisson_charlier_value(n, &int(k as i64), &int(1));
                for l in (k + 1)..=n {
                    let w = binom_int(ni - 1, l as i64 - 1) * binom_int(l as i64 - 1, k as i64) * &c
                        / factorial(l);
                    acc = &acc + &(&x * &xm1.pow(l - 1 - k)).scale(&w);
                }
            }
            acc.scale(&(factorial(n) * pow_int(&rat(1, 2), ni)))
        }
        Family::Pidduck | Family::Narumi | Family::Actuarial => {
            egf_coefficient(&family_generating_function(spec, n)?, n)?
        }
        Family::AssocCExp => {
            let c = spec.get(Param::C);
            let nc = c * int(ni);
            let mut acc = Polynomial::zero();
            for k in 0..n {
                for j in 0..=k {
                    let sign = neg_one_pow(j);
                    let w = sign * pow_int(&nc, k as i64) / factorial(k) * binom_int(k as i64, j as i64);
                    acc = &acc + &Polynomial::x_pow(n - 1).shift(&int(j as i64)).scale(&w);
                }
            }
            acc.mul_by_x()
        }
        Family::AssocHalved => {
            let s: Polynomial = (0..=n)
                .map(|j| {
                    Polynomial::x_pow(n - 1)
                        .shift(&int(j as i64))
                        .scale(&binom_int(ni, j as i64))
                })
                .sum();
            s.mul_by_x().scale(&pow_int(&rat(1, 2), ni))
        }
        Family::AssocShiftedPower => {
            let an = spec.get(Param::A) * int(ni);
            Polynomial::new(
                (0..=n)
                    .map(|l| {
                        if l == 0 {
                            return Rational::zero();
                        }
                        binom(&-an.clone(), n - l) * falling(&int(ni - 1), n - l)
                    })
                    .collect(),
            )
        }
        Family::AssocBernoulliLike => {
            let r = spec.get(Param::A) * int(ni);
            bernoulli_poly(&r, n - 1).mul_by_x()
        }
        Family::AssocEulerLike => {
            let r = spec.get(Param::B) * int(ni);
            euler_poly(&r, n - 1).mul_by_x()
        }
    };
    Ok(p)
}

/// `L_n(x) = Σ_{k>=1} binom(n-1, k-1) n!/k! (-x)^k`, with `L_0 = 1`.
fn laguerre(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let nf = factorial(n);
    Polynomial::new(
        (0..=n)
            .map(|k| {
                if k == 0 {
                    return Rational::zero();
                }
                let sign = neg_one_pow(k);
                binom_int(n as i64 - 1, k as i64 - 1) * &nf / factorial(k) * sign
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::umbral::{associated_sequence, sheffer_sequence};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    /// Counts partitions of an `n`-set into exactly `k` nonempty blocks by
    /// enumerating restricted growth strings.
    fn count_partitions(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, used: usize, k: usize) -> u64 {
            if i == n {
                return (used == k) as u64;
            }
            let mut total = 0;
            for b in 0..=used {
                if b < k {
                    total += go(i + 1, n, used.max(b + 1), k);
                }
            }
            total
        }
        if n == 0 {
            return (k == 0) as u64;
        }
        go(0, n, 0, k)
    }

    #[test]
    fn stirling2_against_enumeration() {
        assert_eq!(count_partitions(4, 2), 7);
        assert_eq!(count_partitions(3, 2), 3);
        for n in 0..=7 {
            for k in 0..=n {
                assert_eq!(stirling2(n as i64, k as i64), int(count_partitions(n, k) as i64));
            }
        }
        assert_eq!(stirling2(4, 2), int(7));
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2(5, 5), int(1));
        assert_eq!(stirling2(3, 4), int(0));
        assert_eq!(stirling2(-1, 0), int(0));
    }

    #[test]
    fn stirling2_from_series() {
        let n = 9;
        for k in 0..=n {
            let s = standard::exp_minus_one(n).pow_usize(k);
            for m in k..=n {
                let v = factorial(m) / factorial(k) * s.coeff(m);
                assert_eq!(v, stirling2(m as i64, k as i64));
            }
        }
    }

    #[test]
    fn stirling1_against_falling_factorial() {
        // (x)_3 = x^3 - 3x^2 + 2x
        assert_eq!(stirling1(3, 2), int(-3));
        assert_eq!(stirling1(3, 1), int(2));
        for n in 0..=8usize {
            let ff = Polynomial::falling_factorial(n);
            for k in 0..=n {
                assert_eq!(stirling1(n as i64, k as i64), ff.coeff(k));
            }
            assert_eq!(stirling1(n as i64, n as i64), int(1));
        }
        assert_eq!(stirling1(2, 3), int(0));
    }

    #[test]
    fn monomial_to_falling_factorial() {
        // x^3 = (x)_1 + 3 (x)_2 + (x)_3
        let lhs: Polynomial = (0..=3)
            .map(|k| Polynomial::falling_factorial(k).scale(&stirling2(3, k as i64)))
            .sum();
        assert_eq!(lhs, Polynomial::x_pow(3));
    }

    #[test]
    fn bernoulli_and_euler_examples() {
        assert_eq!(
            bernoulli_poly(&int(1), 2),
            Polynomial::new(vec![rat(1, 6), int(-1), int(1)])
        );
        assert_eq!(euler_poly(&int(1), 1), Polynomial::new(vec![rat(-1, 2), int(1)]));
        for n in 0..6 {
            assert_eq!(bernoulli_poly(&int(0), n), Polynomial::x_pow(n));
        }
    }

    #[test]
    fn narumi_number_examples() {
        assert_eq!(narumi_number(&int(1), 0), int(1));
        assert_eq!(narumi_number(&int(1), 1), rat(-1, 2));
        assert_eq!(narumi_number(&int(1), 2), rat(2, 3));
    }

    #[test]
    fn family_examples() {
        let abel = FamilySpec::with(Family::Abel, Param::B, int(1)).unwrap();
        assert_eq!(family_polynomial(&abel, 2).unwrap(), p(&[0, -2, 1]));
        let ml = FamilySpec::plain(Family::MittagLeffler).unwrap();
        assert_eq!(family_polynomial(&ml, 2).unwrap(), p(&[0, 0, 4]));
        assert_eq!(family_polynomial(&ml, 0).unwrap(), p(&[1]));
        let bp = FamilySpec::plain(Family::BesselP).unwrap();
        assert_eq!(family_polynomial(&bp, 2).unwrap(), p(&[0, 1, 1]));
        let pc = FamilySpec::with(Family::PoissonCharlier, Param::A, int(1)).unwrap();
        assert_eq!(family_polynomial(&pc, 2).unwrap(), p(&[1, -3, 1]));
        let pid = FamilySpec::plain(Family::Pidduck).unwrap();
        assert_eq!(family_polynomial(&pid, 1).unwrap(), p(&[1, 2]));
        let ex = FamilySpec::plain(Family::Exponential).unwrap();
        assert_eq!(family_polynomial(&ex, 3).unwrap(), p(&[0, 1, 3, 1]));
        let lag = FamilySpec::plain(Family::Laguerre).unwrap();
        assert_eq!(family_polynomial(&lag, 0).unwrap(), p(&[1]));
    }

    #[test]
    fn parameter_validation() {
        let e = FamilySpec::with(Family::Abel, Param::B, int(0)).unwrap_err();
        assert_eq!(e.to_string(), "parameter b must be nonzero");
        assert!(FamilySpec::plain(Family::Abel).is_err());
        assert!(FamilySpec::with(Family::Exponential, Param::A, int(1)).is_err());
        assert!(FamilySpec::with(Family::AssocBernoulliLike, Param::A, rat(1, 2)).is_err());
        assert!(FamilySpec::with(Family::AssocEulerLike, Param::B, int(-1)).is_err());
        assert!(FamilySpec::with(Family::AssocCExp, Param::C, int(0)).is_err());
        assert!(FamilySpec::with(Family::PoissonCharlier, Param::A, int(0)).is_err());
        assert!(FamilySpec::with(Family::LaguerreAlpha, Param::Alpha, int(0)).is_ok());
        assert_eq!("abel".parse::<Family>().unwrap(), Family::Abel);
        assert!("nosuch".parse::<Family>().is_err());
    }

    #[test]
    fn bell_numbers_from_exponential_polynomials() {
        let ex = FamilySpec::plain(Family::Exponential).unwrap();
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, b) in bell.iter().enumerate() {
            assert_eq!(family_polynomial(&ex, n).unwrap().eval(&int(1)), int(*b));
        }
    }

    #[test]
    fn bessel_ode_sign() {
        for n in 0..=6 {
            assert!(bessel_ode_residual(n, -1).is_zero());
        }
        assert!(!bessel_ode_residual(1, 1).is_zero());
    }

    #[test]
    fn laguerre_reflection_pair() {
        let spec = FamilySpec::plain(Family::LaguerreReflected).unwrap();
        let pair = family_pair(&spec, 10).unwrap();
        for n in 0..=6 {
            assert_eq!(
                sheffer_sequence(&pair, n).unwrap(),
                family_polynomial(&spec, n).unwrap()
            );
        }
    }

    fn specs(family: Family) -> Vec<FamilySpec> {
        let vals = [int(1), int(2), int(3), rat(1, 2), rat(-3, 2), int(0), int(5)];
        match family.required_params().as_slice() {
            [] => vec![FamilySpec::plain(family).unwrap()],
            [p] => vals
                .iter()
                .filter_map(|v| FamilySpec::with(family, *p, v.clone()).ok())
                .collect(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn closed_forms_match_engine() {
        for fam in Family::ALL.into_iter().filter(|f| f.has_pair()) {
            for spec in specs(fam) {
                let pair = family_pair(&spec, 10).unwrap();
                for n in 1..=8 {
                    assert_eq!(
                        sheffer_sequence(&pair, n).unwrap(),
                        family_polynomial(&spec, n).unwrap(),
                        "{spec} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn generating_functions_match_engine() {
        for fam in Family::ALL.into_iter().filter(|f| f.has_generating_function()) {
            for spec in specs(fam) {
                let gf = family_generating_function(&spec, 8).unwrap();
                let pair = family_pair(&spec, 8).unwrap();
                for n in 0..=8 {
                    assert_eq!(
                        egf_coefficient(&gf, n).unwrap(),
                        sheffer_sequence(&pair, n).unwrap(),
                        "{spec} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn exponential_engine_route() {
        let f = standard::log_one_plus(10);
        let ex = FamilySpec::plain(Family::Exponential).unwrap();
        for n in 0..=7 {
            assert_eq!(
                associated_sequence(&f, n).unwrap(),
                family_polynomial(&ex, n).unwrap()
            );
        }
    }
}
