//! Every polynomial identity of the catalogue as an executable exact check.
//!
//! A check evaluates both sides symbolically (polynomials in `x`, bivariate
//! polynomials, truncated series or plain rationals) and compares them for
//! exact equality. Identities with a free parameter are proven by sampling
//! at more points than the parameter's degree bound.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

use crate::arith::{
    binom, binom_int, factorial, falling, format_rational, int, neg_one_pow, pow_int, rat, Rational,
};
use crate::error::{Error, Result};
use crate::families::{
    bessel_ode_residual, bessel_y, bernoulli_poly, euler_poly, family_generating_function,
    family_pair, Family, FamilySpec, Param, Tables,
};
#[cfg(feature = "fault-injection")]
use crate::families::Faults;
use crate::operator::apply_operator;
use crate::poly::{BivariatePolynomial, Polynomial};
use crate::series::{standard, Series};
use crate::umbral::{associated_sequence, binomial_convolution_sides, egf_coefficient, sheffer_sequence};

pub const ENGINE_NAME: &str = "umbral";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A parameter value: an index such as `n` or a rational such as `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamValue {
    Index(usize),
    Value(Rational),
}

/// Named parameters of one check instance, kept in key order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params(BTreeMap<String, ParamValue>);

const INDEX_KEYS: [&str; 4] = ["k", "l", "m", "n"];

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(mut self, key: &str, v: usize) -> Self {
        self.0.insert(key.to_string(), ParamValue::Index(v));
        self
    }

    pub fn value(mut self, key: &str, v: Rational) -> Self {
        self.0.insert(key.to_string(), ParamValue::Value(v));
        self
    }

    /// Inserts `key=raw`, parsing indices as non-negative integers and
    /// everything else as a rational.
    pub fn parse_insert(&mut self, key: &str, raw: &str) -> Result<()> {
        let bad = || Error::InvalidParameter(format!("cannot parse {key}={raw}"));
        let v = if INDEX_KEYS.contains(&key) {
            ParamValue::Index(raw.trim().parse().map_err(|_| bad())?)
        } else {
            ParamValue::Value(crate::arith::parse_rational(raw).ok_or_else(bad)?)
        };
        self.0.insert(key.to_string(), v);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn get_index(&self, key: &str) -> Result<usize> {
        match self.0.get(key) {
            Some(ParamValue::Index(v)) => Ok(*v),
            _ => Err(Error::InvalidParameter(format!("missing index {key}"))),
        }
    }

    fn get_value(&self, key: &str) -> Result<Rational> {
        match self.0.get(key) {
            Some(ParamValue::Value(v)) => Ok(v.clone()),
            Some(ParamValue::Index(v)) => Ok(int(*v as i64)),
            None => Err(Error::InvalidParameter(format!("missing parameter {key}"))),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| match v {
                ParamValue::Index(i) => format!("{k}={i}"),
                ParamValue::Value(q) => format!("{k}={}", format_rational(q)),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// One side of an identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Rational),
    Poly(Polynomial),
    Bivariate(BivariatePolynomial),
    Series(Series),
}

impl From<Rational> for Value {
    fn from(v: Rational) -> Self {
        Value::Scalar(v)
    }
}

impl From<Polynomial> for Value {
    fn from(v: Polynomial) -> Self {
        Value::Poly(v)
    }
}

impl From<BivariatePolynomial> for Value {
    fn from(v: BivariatePolynomial) -> Self {
        Value::Bivariate(v)
    }
}

impl From<Series> for Value {
    fn from(v: Series) -> Self {
        Value::Series(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(q) => f.write_str(&format_rational(q)),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Bivariate(p) => write!(f, "{p:?}"),
            Value::Series(s) => write!(f, "{:?} + O(t^{})", s.coeffs(), s.trunc_order() + 1),
        }
    }
}

struct Rationals<'a>(&'a [Rational]);

impl Serialize for Rationals<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for q in self.0 {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Scalar(q) => s.serialize_str(&format_rational(q)),
            Value::Poly(p) => Rationals(p.coeffs()).serialize(s),
            Value::Bivariate(p) => {
                let mut seq = s.serialize_seq(Some(p.coeffs().len()))?;
                for c in p.coeffs() {
                    seq.serialize_element(&Rationals(c.coeffs()))?;
                }
                seq.end()
            }
            Value::Series(ser) => Rationals(ser.coeffs()).serialize(s),
        }
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                ParamValue::Index(i) => map.serialize_entry(k, i)?,
                ParamValue::Value(q) => map.serialize_entry(k, &format_rational(q))?,
            }
        }
        map.end()
    }
}

/// What a check produces: one or more pairs of sides that must agree.
#[derive(Clone, Debug)]
pub struct Outcome {
    sides: Vec<(Value, Value)>,
    note: Option<&'static str>,
}

impl Outcome {
    fn eq(lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        Outcome {
            sides: vec![(lhs.into(), rhs.into())],
            note: None,
        }
    }

    fn and(mut self, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        self.sides.push((lhs.into(), rhs.into()));
        self
    }

    fn note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    InsufficientOrder,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::InsufficientOrder => "insufficient_order",
            Status::Error => "error",
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CheckResult {
    pub id: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_us: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Evaluation context shared by the checks of one run.
#[derive(Clone, Debug)]
pub struct Ctx {
    trunc: usize,
    tables: Tables,
}

impl Ctx {
    pub fn new(trunc: usize, tables: Tables) -> Self {
        Ctx { trunc, tables }
    }

    pub fn trunc_order(&self) -> usize {
        self.trunc
    }

    fn need(&self, degree: usize) -> Result<()> {
        if degree > self.trunc {
            return Err(Error::SeriesTooShort {
                needed: degree,
                available: self.trunc,
            });
        }
        Ok(())
    }

    fn s2(&self, n: usize, k: usize) -> Rational {
        self.tables.stirling2(n as i64, k as i64)
    }

    fn s1(&self, n: i64, k: i64) -> Rational {
        self.tables.stirling1(n, k)
    }

    fn bern(&self, r: &Rational, n: usize) -> Result<Polynomial> {
        self.need(n)?;
        Ok(bernoulli_poly(r, n))
    }

    fn euler(&self, r: &Rational, n: usize) -> Result<Polynomial> {
        self.need(n)?;
        Ok(euler_poly(r, n))
    }

    fn family(&self, spec: &FamilySpec, n: usize) -> Result<Polynomial> {
        self.need(n)?;
        self.tables.family_polynomial(spec, n)
    }

    fn engine(&self, spec: &FamilySpec, n: usize) -> Result<Polynomial> {
        sheffer_sequence(&family_pair(spec, self.trunc)?, n)
    }

    fn narumi_number(&self, a: &Rational, k: usize) -> Rational {
        self.tables.narumi_number(a, k)
    }

    fn narumi(&self, a: &Rational, k: usize) -> Result<Polynomial> {
        self.family(&FamilySpec::with(Family::Narumi, Param::A, a.clone())?, k)
    }

    fn poisson_charlier(&self, n: usize, a: &Rational) -> Result<Polynomial> {
        self.family(&FamilySpec::with(Family::PoissonCharlier, Param::A, a.clone())?, n)
    }
}

/// Run-wide settings.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_max: usize,
    /// Series truncation order; defaults to `2 n_max + 4`.
    pub trunc_order: Option<usize>,
    /// Identity ids to run; empty means all.
    pub ids: Vec<String>,
    /// Samples for the nonzero parameters `a`, `b`, `c`.
    pub abc: Vec<Rational>,
    /// Samples for the order parameters `alpha`, `beta`, `r`.
    pub orders: Vec<Rational>,
    #[cfg(feature = "fault-injection")]
    pub faults: Faults,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 6,
            trunc_order: None,
            ids: Vec::new(),
            abc: vec![int(1), int(2), int(3)],
            orders: vec![int(0), int(1), rat(1, 2), rat(-3, 2), int(5)],
            #[cfg(feature = "fault-injection")]
            faults: Faults::default(),
        }
    }
}

impl SuiteConfig {
    pub fn trunc(&self) -> usize {
        self.trunc_order.unwrap_or(2 * self.n_max + 4)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        if self.abc.is_empty() || self.abc.iter().any(Zero::is_zero) {
            return Err(Error::InvalidParameter(
                "samples for a, b, c must be nonempty and nonzero".into(),
            ));
        }
        if self.orders.is_empty() {
            return Err(Error::InvalidParameter("order samples must be nonempty".into()));
        }
        for id in &self.ids {
            find(id)?;
        }
        Ok(())
    }

    fn ctx(&self) -> Ctx {
        let size = 4 * self.n_max + 4;
        #[cfg(feature = "fault-injection")]
        let tables = Tables::with_faults(size, self.faults.clone());
        #[cfg(not(feature = "fault-injection"))]
        let tables = Tables::new(size);
        Ctx::new(self.trunc(), tables)
    }
}

type Grid = Box<dyn Fn(&SuiteConfig) -> Vec<Params> + Send + Sync>;
type Verify = Box<dyn Fn(&Ctx, &Params) -> Result<Outcome> + Send + Sync>;

/// A registered identity.
pub struct IdentityCheck {
    pub id: String,
    pub statement: String,
    /// How free parameters are sampled, when the check has any.
    pub sampling: Option<&'static str>,
    grid: Grid,
    verify: Verify,
}

impl IdentityCheck {
    pub fn grid(&self, cfg: &SuiteConfig) -> Vec<Params> {
        (self.grid)(cfg)
    }

    pub fn run(&self, ctx: &Ctx, params: &Params) -> CheckResult {
        let start = Instant::now();
        let outcome = (self.verify)(ctx, params);
        let elapsed_us = start.elapsed().as_micros() as u64;
        let mut result = CheckResult {
            id: self.id.clone(),
            params: params.clone(),
            status: Status::Pass,
            witness: None,
            note: None,
            elapsed_us,
        };
        match outcome {
            Ok(o) => {
                result.note = o.note.map(str::to_string);
                if let Some((l, r)) = o.sides.into_iter().find(|(l, r)| l != r) {
                    result.status = Status::Fail;
                    result.witness = Some(Witness {
                        lhs: Some(l),
                        rhs: Some(r),
                        reason: None,
                    });
                }
            }
            Err(e) => {
                result.status = if e.is_insufficient_order() {
                    Status::InsufficientOrder
                } else {
                    Status::Error
                };
                result.witness = Some(Witness {
                    lhs: None,
                    rhs: None,
                    reason: Some(e.to_string()),
                });
            }
        }
        result
    }
}

fn entry(
    id: &str,
    statement: &str,
    sampling: Option<&'static str>,
    grid: impl Fn(&SuiteConfig) -> Vec<Params> + Send + Sync + 'static,
    verify: impl Fn(&Ctx, &Params) -> Result<Outcome> + Send + Sync + 'static,
) -> IdentityCheck {
    IdentityCheck {
        id: id.to_string(),
        statement: statement.to_string(),
        sampling,
        grid: Box::new(grid),
        verify: Box::new(verify),
    }
}

/// The full catalogue, built once.
pub fn catalog() -> &'static [IdentityCheck] {
    static CATALOG: OnceLock<Vec<IdentityCheck>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn find(id: &str) -> Result<&'static IdentityCheck> {
    catalog()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn q(n: usize) -> Rational {
    int(n as i64)
}

/// `(x + j)^e`.
fn shifted_power(j: &Rational, e: usize) -> Polynomial {
    Polynomial::new(vec![j.clone(), int(1)]).pow(e)
}

fn delta(a: usize, b: usize) -> Rational {
    if a == b {
        int(1)
    } else {
        int(0)
    }
}

/// `m! [t^m] (Σ_l w_l t^l / l!)^n` for `m = 0..w.len()`.
fn egf_power(w: &[Rational], n: usize) -> Vec<Rational> {
    let d = w.len() - 1;
    let inner = Series::from_fn(d, |l| &w[l] / factorial(l));
    let p = inner.pow_usize(n);
    (0..=d).map(|m| factorial(m) * p.coeff(m)).collect()
}

/// Adds positive integers to `base` until there are `bound + 2` samples.
fn extend_samples(base: &[Rational], bound: usize) -> Vec<Rational> {
    let mut v = base.to_vec();
    let mut next = 1;
    while v.len() < bound + 2 {
        let c = int(next);
        if !v.contains(&c) {
            v.push(c);
        }
        next += 1;
    }
    v
}

fn with_zero(base: &[Rational]) -> Vec<Rational> {
    let mut v = vec![int(0)];
    v.extend(base.iter().filter(|x| !x.is_zero()).cloned());
    v
}

fn grid_n(from: usize) -> impl Fn(&SuiteConfig) -> Vec<Params> {
    move |cfg| (from..=cfg.n_max).map(|n| Params::new().index("n", n)).collect()
}

/// `n` together with `m` in `lo(n)..=hi(n)`.
fn grid_nm(from: usize, lo: fn(usize) -> usize, hi: fn(usize) -> Option<usize>) -> impl Fn(&SuiteConfig) -> Vec<Params> {
    move |cfg| {
        let mut out = Vec::new();
        for n in from..=cfg.n_max {
            if let Some(h) = hi(n) {
                for m in lo(n)..=h {
                    out.push(Params::new().index("n", n).index("m", m));
                }
            }
        }
        out
    }
}

fn grid_n_value(from: usize, key: &'static str, samples: fn(&SuiteConfig) -> Vec<Rational>) -> impl Fn(&SuiteConfig) -> Vec<Params> {
    move |cfg| {
        let mut out = Vec::new();
        for n in from..=cfg.n_max {
            for v in samples(cfg) {
                out.push(Params::new().index("n", n).value(key, v));
            }
        }
        out
    }
}

fn spec_grid(family: Family, cfg: &SuiteConfig) -> Vec<FamilySpec> {
    match family.required_params().as_slice() {
        [] => vec![FamilySpec::plain(family).expect("no parameters")],
        [p] => {
            let samples = match p {
                Param::A | Param::B | Param::C => cfg.abc.clone(),
                _ => cfg.orders.clone(),
            };
            samples
                .into_iter()
                .filter_map(|v| FamilySpec::with(family, *p, v).ok())
                .collect()
        }
        _ => unreachable!("families take at most one parameter"),
    }
}

fn spec_from(family: Family, params: &Params) -> Result<FamilySpec> {
    let mut values = Vec::new();
    for p in family.required_params() {
        values.push((p, params.get_value(p.name())?));
    }
    FamilySpec::new(family, values)
}

fn domain(id: &str, ok: bool, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            id: id.to_string(),
            reason: reason.to_string(),
        })
    }
}

fn nonzero(id: &str, v: &Rational, key: &str) -> Result<()> {
    domain(id, !v.is_zero(), &format!("{key} must be nonzero"))
}

fn nonneg_integer(id: &str, v: &Rational, key: &str) -> Result<usize> {
    match crate::arith::as_integer(v) {
        Some(i) if i >= 0 => Ok(i as usize),
        _ => Err(Error::OutOfDomain {
            id: id.to_string(),
            reason: format!("{key} must be a non-negative integer"),
        }),
    }
}

fn n_at_least(id: &str, p: &Params, min: usize) -> Result<usize> {
    let n = p.get_index("n")?;
    domain(id, n >= min, &format!("n must be at least {min}"))?;
    Ok(n)
}

fn m_between(id: &str, p: &Params, lo: usize, hi: usize) -> Result<usize> {
    let m = p.get_index("m")?;
    domain(id, lo <= m && m <= hi, &format!("m must lie in {lo}..={hi}"))?;
    Ok(m)
}

// ---------------------------------------------------------------------------
// individual checks
// ---------------------------------------------------------------------------

fn t1a(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T1a", p, 1)?;
    let pc = ctx.poisson_charlier(n, &int(2))?;
    let xm1 = Polynomial::from_ints(&[-1, 1]);
    let mut rhs = Polynomial::zero();
    for m in 0..n {
        for k in 0..(n - m) {
            let w = pc.eval(&q(k)) * binom_int((m + k) as i64, k as i64) * factorial(2 * n - m - k - 2)
                / (factorial(m + k) * factorial(n - m - k - 1))
                * pow_int(&rat(1, 2), (n - m - k - 1) as i64);
            rhs = &rhs + &xm1.pow(m).scale(&w);
        }
    }
    let lhs = Polynomial::monomial(neg_one_pow(n), n - 1);
    Ok(Outcome::eq(lhs, rhs))
}

fn t1b(_: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T1b", p, 2)?;
    let m = m_between("T1b", p, 0, n - 2)?;
    let sum: Rational = (0..(n - m))
        .map(|k| {
            neg_one_pow(k) * pow_int(&rat(1, 2), (n - m - 1) as i64) * binom_int(n as i64, k as i64)
                * factorial(2 * n - m - k - 2)
                / (factorial(m) * factorial(n - m - k - 1))
        })
        .sum();
    Ok(Outcome::eq(sum, int(0)))
}

fn lemma2_sum(n: usize, c: &Rational) -> Polynomial {
    let nc = c * q(n);
    let mut acc = Polynomial::zero();
    for k in 0..n {
        for j in 0..=k {
            let w = neg_one_pow(j) * pow_int(&nc, k as i64) / factorial(k) * binom_int(k as i64, j as i64);
            acc = &acc + &shifted_power(&q(j), n - 1).scale(&w);
        }
    }
    acc.mul_by_x()
}

fn l2(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("L2", p, 1)?;
    let c = p.get_value("c")?;
    nonzero("L2", &c, "c")?;
    let spec = FamilySpec::with(Family::AssocCExp, Param::C, c.clone())?;
    let f = &Series::<Rational>::t(ctx.trunc) * &standard::exp_minus_one(ctx.trunc).scale(&c).exp()?;
    Ok(Outcome::eq(ctx.family(&spec, n)?, associated_sequence(&f, n)?).and(lemma2_sum(n, &c), ctx.family(&spec, n)?))
}

/// Shared right-hand side of the two Abel expansions; `weights[l]` is the
/// value multiplied over each part of the composition, `shift` the constant
/// added to `x + j`.
fn abel_expansion(n: usize, c: &Rational, weights: &[Rational], shift: &Rational) -> Polynomial {
    let mpow = egf_power(weights, n);
    let nc = c * q(n);
    let mut acc = Polynomial::zero();
    for (m, mm) in mpow.iter().enumerate().take(n) {
        for k in 0..n {
            for j in 0..=k {
                let w = binom_int(n as i64 - 1, m as i64) * mm * binom_int(k as i64, j as i64) * neg_one_pow(j)
                    * pow_int(&nc, k as i64)
                    / factorial(k);
                acc = &acc + &shifted_power(&(shift + q(j)), n - 1 - m).scale(&w);
            }
        }
    }
    acc.mul_by_x()
}

fn abel(ctx: &Ctx, n: usize, b: &Rational) -> Result<Polynomial> {
    ctx.family(&FamilySpec::with(Family::Abel, Param::B, b.clone())?, n)
}

fn t3(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T3", p, 1)?;
    let (b, c) = (p.get_value("b")?, p.get_value("c")?);
    nonzero("T3", &b, "b")?;
    nonzero("T3", &c, "c")?;
    let act = FamilySpec::with(Family::Actuarial, Param::Beta, -b.clone())?;
    let weights = (0..n)
        .map(|l| Ok(ctx.family(&act, l)?.eval(&-c.clone())))
        .collect::<Result<Vec<_>>>()?;
    let rhs = abel_expansion(n, &c, &weights, &int(0));
    Ok(Outcome::eq(abel(ctx, n, &b)?, rhs))
}

fn c4(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("C4", p, 1)?;
    let (b, c) = (p.get_value("b")?, p.get_value("c")?);
    nonzero("C4", &b, "b")?;
    nonzero("C4", &c, "c")?;
    let expo = FamilySpec::plain(Family::Exponential)?;
    let weights = (0..n)
        .map(|l| Ok(ctx.family(&expo, l)?.eval(&c)))
        .collect::<Result<Vec<_>>>()?;
    let rhs = abel_expansion(n, &c, &weights, &-(&b * q(n)));
    Ok(Outcome::eq(abel(ctx, n, &b)?, rhs))
}

fn t5(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T5", p, 1)?;
    let pc = ctx.poisson_charlier(n, &int(1))?;
    let xm1 = Polynomial::from_ints(&[-1, 1]);
    let rhs: Polynomial = (0..n)
        .map(|k| xm1.pow(k).scale(&(binom_int(n as i64 - 1, k as i64) * pc.eval(&q(n - 1 - k)))))
        .sum();
    let lag = ctx.family(&FamilySpec::plain(Family::Laguerre)?, n)?;
    Ok(Outcome::eq(lag, rhs.mul_by_x()))
}

fn l6(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("L6", p, 1)?;
    let spec = FamilySpec::plain(Family::Mott)?;
    Ok(Outcome::eq(ctx.family(&spec, n)?, ctx.engine(&spec, n)?))
}

fn x44(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("X44", p, 1)?;
    let a = nonneg_integer("X44", &p.get_value("a")?, "a")?;
    let b = nonneg_integer("X44", &p.get_value("b")?, "b")?;
    let (an, bn) = (q(a * n), q(b * n));
    let e_op = standard::exp_plus_one_half(ctx.trunc).pow(&bn)?;
    let b_op = standard::exp_minus_one_over_t(ctx.trunc).pow(&an)?;
    let lhs = apply_operator(&e_op, &ctx.euler(&bn, n - 1)?)?;
    let rhs = apply_operator(&b_op, &ctx.bern(&an, n - 1)?)?;
    Ok(Outcome::eq(lhs, rhs))
}

fn t7(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T7", p, 1)?;
    let a = nonneg_integer("T7", &p.get_value("a")?, "a")?;
    let b = nonneg_integer("T7", &p.get_value("b")?, "b")?;
    let (an, bn) = (a * n, b * n);
    let e = ctx.euler(&q(bn), n - 1)?;
    let lhs: Polynomial = (0..=bn)
        .map(|k| e.shift(&q(k)).scale(&binom_int(bn as i64, k as i64)))
        .sum();
    let mut rhs = Polynomial::zero();
    for l in 0..n {
        let w = factorial(an) / (factorial(l + an) * factorial(n - 1 - l)) * ctx.s2(l + an, an);
        rhs = &rhs + &ctx.bern(&q(an), n - 1 - l)?.scale(&w);
    }
    let rhs = rhs.scale(&(pow_int(&int(2), bn as i64) * factorial(n - 1)));
    Ok(Outcome::eq(lhs, rhs))
}

fn x51(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("X51", p, 1)?;
    let bern = ctx.bern(&q(n), n - 1)?;
    let rhs: Polynomial = (0..=n)
        .map(|j| bern.shift(&q(j)).scale(&binom_int(n as i64, j as i64)))
        .sum();
    let ml = ctx.family(&FamilySpec::plain(Family::MittagLeffler)?, n)?;
    Ok(Outcome::eq(ml, rhs.mul_by_x()))
}

fn t8(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T8", p, 1)?;
    let bern = ctx.bern(&q(n), n - 1)?;
    let mut rhs = Polynomial::zero();
    for j in 0..=(n + 1) {
        let w = Polynomial::new(vec![
            binom_int(n as i64, j as i64 - 1),
            binom_int(n as i64 + 1, j as i64),
        ]);
        rhs = &rhs + &(&w * &bern.shift(&q(j)));
    }
    let pid = ctx.family(&FamilySpec::plain(Family::Pidduck)?, n)?;
    Ok(Outcome::eq(pid, rhs.scale(&rat(1, 2))))
}

fn power_sum(n: usize) -> Polynomial {
    (0..=n)
        .map(|j| shifted_power(&q(j), n - 1).scale(&binom_int(n as i64, j as i64)))
        .sum()
}

fn t9_rhs(ctx: &Ctx, n: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::zero();
    for l in 0..n {
        let bern = ctx.bern(&q(n), n - 1 - l)?;
        let w0 = ctx.s2(l + n, n) / (factorial(l + n) * factorial(n - l - 1));
        for j in 0..=n {
            acc = &acc + &bern.shift(&q(j)).scale(&(&w0 * binom_int(n as i64, j as i64)));
        }
    }
    Ok(acc.scale(&(factorial(n) * factorial(n - 1))))
}

fn t9a(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T9a", p, 1)?;
    Ok(Outcome::eq(power_sum(n), t9_rhs(ctx, n)?))
}

fn t9b(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T9b", p, 1)?;
    // j^{n-1} with 0^0 = 1
    let lhs: Rational = (0..=n)
        .map(|j| binom_int(n as i64, j as i64) * pow_int(&q(j), n as i64 - 1))
        .sum();
    Ok(Outcome::eq(lhs, t9_rhs(ctx, n)?.eval(&int(0))))
}

fn t10(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T10", p, 1)?;
    let xm1 = Polynomial::from_ints(&[-1, 1]);
    let mut rhs = Polynomial::zero();
    for j in 0..n {
        for l in 0..=j {
            let mut w = Rational::zero();
            for k in (j + 1)..=n {
                w += binom_int(n as i64, k as i64) * pow_int(&int(2), k as i64) * ctx.s2(l + n, n)
                    * ctx.s1(k as i64 - 1, j as i64)
                    * factorial(j)
                    / (factorial(l + n) * factorial(k - 1) * factorial(j - l));
            }
            rhs = &rhs + &xm1.pow(j - l).scale(&w);
        }
    }
    let rhs = rhs.scale(&(factorial(n) * factorial(n - 1)));
    Ok(Outcome::eq(power_sum(n), rhs))
}

fn r60(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("R60", p, 1)?;
    let mut rhs = Polynomial::zero();
    for j in 0..n {
        for l in 0..=j {
            let w0 = ctx.s2(l + n, n) * ctx.s1(n as i64 - 1, j as i64) * factorial(j)
                / (factorial(l + n) * factorial(j - l));
            for k in 0..=n {
                let w = &w0 * binom_int(n as i64, k as i64);
                rhs = &rhs + &shifted_power(&(q(k) - int(1)), j - l).scale(&w);
            }
        }
    }
    Ok(Outcome::eq(power_sum(n), rhs.scale(&factorial(n))))
}

fn l11(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("L11", p, 1)?;
    let m = m_between("L11", p, 1, n)?;
    let rhs = binom_int(n as i64 - 1, m as i64 - 1) * ctx.narumi_number(&-q(n), n - m);
    Ok(Outcome::eq(ctx.s2(n, m), rhs))
}

/// `n! Σ_k binom(n-1, k+m-1) binom(k+m-1, k) / (k+m)! · v_k`.
fn narumi_weighted(n: usize, m: usize, v: impl Fn(usize) -> Result<Rational>) -> Result<Rational> {
    let mut acc = Rational::zero();
    for k in 0..=(n - m) {
        acc += binom_int(n as i64 - 1, (k + m) as i64 - 1) * binom_int((k + m) as i64 - 1, k as i64)
            / factorial(k + m)
            * v(k)?;
    }
    Ok(acc * factorial(n))
}

fn t12(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T12", p, 1)?;
    let m = m_between("T12", p, 1, n)?;
    let a = -q(n);
    let lhs = binom_int(n as i64 - 1, m as i64 - 1) * ctx.narumi_number(&a, n - m);
    let rhs = narumi_weighted(n, m, |k| Ok(ctx.narumi(&a, k)?.eval(&a)))?;
    Ok(Outcome::eq(lhs, rhs))
}

fn x68(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("X68", p, 1)?;
    let k = p.get_index("k")?;
    domain("X68", k <= n, "k must lie in 0..=n")?;
    let lhs = ctx.bern(&(q(k) - q(n) + int(1)), k)?;
    let rhs = ctx.narumi(&-q(n), k)?.shift(&int(-1));
    Ok(Outcome::eq(lhs, rhs))
}

fn c13(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("C13", p, 1)?;
    let m = m_between("C13", p, 1, n)?;
    let lhs = binom_int(n as i64 - 1, m as i64 - 1) * ctx.narumi_number(&-q(n), n - m);
    let x0 = int(1) - q(n);
    let rhs = narumi_weighted(n, m, |k| Ok(ctx.bern(&(q(k) - q(n) + int(1)), k)?.eval(&x0)))?;
    Ok(Outcome::eq(lhs, rhs).note("left side read through the Narumi form checked by T12"))
}

fn t14(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("T14", p, 1)?;
    let m = m_between("T14", p, 1, n)?;
    let a = p.get_value("a")?;
    nonzero("T14", &a, "a")?;
    let an = &a * q(n);
    let lhs = binom_int(n as i64 - 1, m as i64 - 1) * ctx.bern(&(int(1) - q(m)), n - m)?.eval(&int(1));
    let x0 = &an + int(1);
    let mut rhs = Rational::zero();
    for k in 0..=(n - m) {
        rhs += binom(&-an.clone(), n - k - m) * binom_int((k + m) as i64 - 1, k as i64)
            / factorial(k + m - 1)
            * ctx.bern(&(q(k) - q(n) + int(1)), k)?.eval(&x0);
    }
    Ok(Outcome::eq(lhs, rhs * factorial(n - 1)))
}

/// `Σ_k binom(k+m-1, k) S₂(n, k+m) · v_k` for `k = 0..=n-m`.
fn stirling_weighted(ctx: &Ctx, n: usize, m: usize, v: impl Fn(usize) -> Result<Rational>) -> Result<Rational> {
    let mut acc = Rational::zero();
    for k in 0..=(n - m) {
        acc += binom_int((k + m) as i64 - 1, k as i64) * ctx.s2(n, k + m) * v(k)?;
    }
    Ok(acc)
}

fn r74(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("R74", p, 1)?;
    let m = m_between("R74", p, 1, n)?;
    let rhs = stirling_weighted(ctx, n, m, |k| Ok(ctx.narumi_number(&q(n), k)))?;
    Ok(Outcome::eq(rhs, delta(m, n)))
}

fn r76(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("R76", p, 1)?;
    let m = m_between("R76", p, 1, n)?;
    let lhs = binom_int(n as i64 - 1, m as i64 - 1) * factorial(n) / factorial(m);
    let rhs = stirling_weighted(ctx, n, m, |k| Ok(ctx.narumi(&q(n), k)?.eval(&q(n))))?;
    Ok(Outcome::eq(lhs, rhs))
}

fn r82(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("R82", p, 1)?;
    let l = p.get_index("l")?;
    domain("R82", l <= n, "l must lie in 0..=n")?;
    let alpha = p.get_value("alpha")?;
    let lhs = binom(&(q(n) + &alpha), n - l) * factorial(n) / factorial(l);
    let nar = (0..=n)
        .map(|k| Ok(ctx.narumi(&q(n), k)?.eval(&q(n))))
        .collect::<Result<Vec<_>>>()?;
    let mut rhs = Rational::zero();
    for m in l..=n {
        let wm = binom(&(&alpha + int(1)), m - l) * falling(&q(m), m - l);
        for (k, nk) in nar.iter().enumerate().take(n - m + 1) {
            rhs += binom_int((k + m) as i64 - 1, k as i64) * &wm * ctx.s2(n, k + m) * nk;
        }
    }
    Ok(Outcome::eq(lhs, rhs))
}

fn r84(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("R84", p, 1)?;
    let m = m_between("R84", p, 1, n)?;
    let a = p.get_value("a")?;
    nonzero("R84", &a, "a")?;
    let x0 = -(&a * q(n));
    let lhs = binom(&x0, n - m) * falling(&(q(n) - int(1)), n - m);
    let rhs = stirling_weighted(ctx, n, m, |k| Ok(ctx.narumi(&q(n), k)?.eval(&x0)))?;
    Ok(Outcome::eq(lhs, rhs))
}

/// `x^n y_{n-1}(1/x)`, with the `n = 0` term read as `1`.
fn reversed_bessel(n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Ok(Polynomial::one());
    }
    bessel_y(n - 1).reversed(n)
}

fn x24(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("X24", p, 1)?;
    ctx.need(n)?;
    let seq = (0..=n).map(reversed_bessel).collect::<Result<Vec<_>>>()?;
    let (lhs, rhs) = binomial_convolution_sides(&seq, &seq, n);
    Ok(Outcome::eq(lhs, rhs).note("the k = 0 and k = n terms use x^0 y_{-1}(1/x) := 1"))
}

fn x13(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = p.get_index("n")?;
    let a = p.get_value("a")?;
    nonzero("X13", &a, "a")?;
    let big_n = ctx.trunc;
    ctx.need(n)?;
    let pc = ctx.poisson_charlier(n, &a)?;
    let sum = Series::from_fn(big_n, |k| pc.eval(&q(k)) / factorial(k));
    let lhs = &sum * &standard::exp_scaled(&int(-1), big_n);
    let rhs = Series::new(vec![int(-1), a.recip()], big_n).pow_usize(n);
    Ok(Outcome::eq(lhs, rhs).note("both sides compared as series truncated at the run's order, summing k up to that order"))
}

fn x22(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("X22", p, 1)?;
    let bp = ctx.family(&FamilySpec::plain(Family::BesselP)?, n)?;
    Ok(Outcome::eq(bp, reversed_bessel(n)?))
}

fn gf_check(ctx: &Ctx, spec: &FamilySpec, n: usize, closed_form_is_gf: bool) -> Result<Outcome> {
    ctx.need(n)?;
    let gf = egf_coefficient(&family_generating_function(spec, ctx.trunc)?, n)?;
    let engine = ctx.engine(spec, n)?;
    if closed_form_is_gf {
        Ok(Outcome::eq(gf, engine))
    } else {
        Ok(Outcome::eq(gf.clone(), ctx.family(spec, n)?).and(gf, engine))
    }
}

fn x42(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("X42", p, 1)?;
    let a = p.get_value("a")?;
    let b = p.get_value("b")?;
    let bl = FamilySpec::with(Family::AssocBernoulliLike, Param::A, a)?;
    let el = FamilySpec::with(Family::AssocEulerLike, Param::B, b)?;
    Ok(Outcome::eq(ctx.family(&bl, n)?, ctx.engine(&bl, n)?).and(ctx.family(&el, n)?, ctx.engine(&el, n)?))
}

fn x49(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = n_at_least("X49", p, 1)?;
    let pid = ctx.family(&FamilySpec::plain(Family::Pidduck)?, n)?;
    let op = standard::exp_plus_one_half(ctx.trunc).reciprocal()?;
    let ml = ctx.family(&FamilySpec::plain(Family::MittagLeffler)?, n)?;
    Ok(Outcome::eq(ml, apply_operator(&op, &pid)?))
}

fn bessel_ode(ctx: &Ctx, p: &Params) -> Result<Outcome> {
    let n = p.get_index("n")?;
    ctx.need(n)?;
    Ok(Outcome::eq(bessel_ode_residual(n, -1), Polynomial::zero())
        .note("checked with -n(n+1)y; the +n(n+1)y form fails for every n >= 1"))
}

fn build_catalog() -> Vec<IdentityCheck> {
    let abc = |c: &SuiteConfig| c.abc.clone();
    let orders = |c: &SuiteConfig| c.orders.clone();
    let mut v = vec![
        entry(
            "T1a",
            "(-1)^n x^{n-1} expanded in powers of (x-1) with Poisson-Charlier C_n(k;2) weights",
            None,
            grid_n(1),
            t1a,
        ),
        entry(
            "T1b",
            "the alternating factorial sum vanishes for 0 <= m <= n-2",
            None,
            grid_nm(2, |_| 0, |n| Some(n - 2)),
            t1b,
        ),
        entry(
            "L2",
            "closed form of p_n ~ (1, t e^{c(e^t-1)}) equals the engine output",
            None,
            grid_n_value(1, "c", abc),
            l2,
        ),
        entry(
            "T3",
            "Abel polynomial as an actuarial-weighted composition sum",
            Some("b: degree <= n-1, c: degree <= 2n-2; each sampled at bound+2 points"),
            |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for b in extend_samples(&cfg.abc, n - 1) {
                        for c in extend_samples(&cfg.abc, 2 * n - 2) {
                            out.push(Params::new().index("n", n).value("b", b.clone()).value("c", c));
                        }
                    }
                }
                out
            },
            t3,
        ),
        entry(
            "C4",
            "Abel polynomial as an exponential-polynomial-weighted composition sum",
            Some("b: degree <= n-1, c: degree <= 2n-2; each sampled at bound+2 points"),
            |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for b in extend_samples(&cfg.abc, n - 1) {
                        for c in extend_samples(&cfg.abc, 2 * n - 2) {
                            out.push(Params::new().index("n", n).value("b", b.clone()).value("c", c));
                        }
                    }
                }
                out
            },
            c4,
        ),
        entry(
            "T5",
            "L_n(x) = x sum_k binom(n-1,k) C_n(n-1-k;1) (x-1)^k",
            None,
            grid_n(1),
            t5,
        ),
        entry("L6", "Mott closed form equals the engine output", None, grid_n(1), l6),
        entry(
            "X44",
            "((e^t+1)/2)^{bn} E_{n-1}^{(bn)}(x) = ((e^t-1)/t)^{an} B_{n-1}^{(an)}(x) as operators",
            None,
            |cfg: &SuiteConfig| ab_grid(cfg),
            x44,
        ),
        entry(
            "T7",
            "binomial sum of shifted Euler polynomials equals a Stirling-weighted Bernoulli sum",
            None,
            |cfg: &SuiteConfig| ab_grid(cfg),
            t7,
        ),
        entry(
            "X51",
            "M_n(x) = sum_j binom(n,j) x B_{n-1}^{(n)}(x+j)",
            None,
            grid_n(1),
            x51,
        ),
        entry(
            "T8",
            "Pidduck polynomial as a sum of shifted Bernoulli polynomials of order n",
            None,
            grid_n(1),
            t8,
        ),
        entry(
            "T9a",
            "sum_j binom(n,j)(x+j)^{n-1} as a Stirling-weighted Bernoulli sum",
            None,
            grid_n(1),
            t9a,
        ),
        entry("T9b", "the x = 0 specialization of T9a, with 0^0 = 1", None, grid_n(1), t9b),
        entry(
            "T10",
            "sum_j binom(n,j)(x+j)^{n-1} as a triple sum with S1 and S2 weights",
            None,
            grid_n(1),
            t10,
        ),
        entry(
            "R60",
            "sum_j binom(n,j)(x+j)^{n-1} as a triple sum in powers of (x+k-1)",
            None,
            grid_n(1),
            r60,
        ),
        entry(
            "L11",
            "S2(n,m) = binom(n-1,m-1) N_{n-m}^{(-n)}",
            None,
            grid_nm(1, |_| 1, Some),
            l11,
        ),
        entry(
            "T12",
            "binom(n-1,m-1) N_{n-m}^{(-n)} as a sum of Narumi values at -n",
            None,
            grid_nm(1, |_| 1, Some),
            t12,
        ),
        entry(
            "X68",
            "B_k^{(k-n+1)}(x) = N_k^{(-n)}(x-1)",
            None,
            |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for k in 0..=n {
                        out.push(Params::new().index("n", n).index("k", k));
                    }
                }
                out
            },
            x68,
        ),
        entry(
            "C13",
            "T12 rewritten through X68 as a sum of Bernoulli values at 1-n",
            None,
            grid_nm(1, |_| 1, Some),
            c13,
        ),
        entry(
            "T14",
            "binom(n-1,m-1) B_{n-m}^{(1-m)}(1) as a sum with binom(-an, .) weights",
            Some("a: degree <= 2(n-m); sampled at bound+2 points"),
            |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for m in 1..=n {
                        for a in extend_samples(&cfg.abc, 2 * (n - m)) {
                            out.push(Params::new().index("n", n).index("m", m).value("a", a));
                        }
                    }
                }
                out
            },
            t14,
        ),
        entry(
            "R74",
            "sum_k binom(k+m-1,k) S2(n,k+m) N_k^{(n)} = delta_{m,n}",
            None,
            grid_nm(1, |_| 1, Some),
            r74,
        ),
        entry(
            "R76",
            "binom(n-1,m-1) n!/m! as a sum of Narumi values at n",
            None,
            grid_nm(1, |_| 1, Some),
            r76,
        ),
        entry(
            "R82",
            "binom(n+alpha,n-l) n!/l! as a sum with binom(alpha+1, .) weights",
            Some("alpha: degree <= n-l; sampled at bound+2 points"),
            |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for l in 0..=n {
                        for al in extend_samples(&cfg.orders, n - l) {
                            out.push(Params::new().index("n", n).index("l", l).value("alpha", al));
                        }
                    }
                }
                out
            },
            r82,
        ),
        entry(
            "R84",
            "binom(-an,n-m)(n-1)_{n-m} as a sum of Narumi values at -an",
            Some("a: degree <= n-m; sampled at bound+2 points"),
            |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for m in 1..=n {
                        for a in extend_samples(&cfg.abc, n - m) {
                            out.push(Params::new().index("n", n).index("m", m).value("a", a));
                        }
                    }
                }
                out
            },
            r84,
        ),
        entry(
            "X24",
            "binomial convolution of x^n y_{n-1}(1/x)",
            None,
            grid_n(1),
            x24,
        ),
        entry(
            "X13",
            "sum_k C_n(k;a) t^k/k! e^{-t} = ((t-a)/a)^n as truncated series",
            None,
            grid_n_value(0, "a", abc),
            x13,
        ),
        entry(
            "X22",
            "p_n(x) = x^n y_{n-1}(1/x)",
            None,
            grid_n(1),
            x22,
        ),
        entry(
            "GF23",
            "n! [t^n] e^{x(1-(1-2t)^{1/2})} equals p_n(x)",
            None,
            grid_n(1),
            |ctx: &Ctx, p: &Params| gf_check(ctx, &FamilySpec::plain(Family::BesselP)?, n_at_least("GF23", p, 1)?, false),
        ),
        entry(
            "GF37",
            "n! [t^n] e^{x(e^t-1)} equals the exponential polynomial",
            None,
            grid_n(1),
            |ctx: &Ctx, p: &Params| gf_check(ctx, &FamilySpec::plain(Family::Exponential)?, n_at_least("GF37", p, 1)?, false),
        ),
        entry(
            "GF48",
            "n! [t^n] (1-t)^{-1} ((1+t)/(1-t))^x equals the Pidduck sequence of its pair",
            None,
            grid_n(1),
            |ctx: &Ctx, p: &Params| gf_check(ctx, &FamilySpec::plain(Family::Pidduck)?, n_at_least("GF48", p, 1)?, true),
        ),
        entry(
            "GF61",
            "n! [t^n] (log(1+t)/t)^a (1+t)^x equals the Narumi sequence of its pair",
            None,
            grid_n_value(1, "a", orders),
            |ctx: &Ctx, p: &Params| {
                let spec = FamilySpec::with(Family::Narumi, Param::A, p.get_value("a")?)?;
                gf_check(ctx, &spec, n_at_least("GF61", p, 1)?, true)
            },
        ),
        entry(
            "X42",
            "x B_{n-1}^{(an)}(x) and x E_{n-1}^{(bn)}(x) are the associated sequences of their pairs",
            None,
            |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for a in &cfg.abc {
                        for b in &cfg.abc {
                            out.push(Params::new().index("n", n).value("a", a.clone()).value("b", b.clone()));
                        }
                    }
                }
                out
            },
            x42,
        ),
        entry(
            "X49",
            "M_n(x) = (2/(e^t+1)) P_n(x)",
            None,
            grid_n(1),
            x49,
        ),
        entry(
            "BESSEL-ODE",
            "x^2 y_n'' + (2x+2) y_n' - n(n+1) y_n = 0",
            None,
            grid_n(0),
            bessel_ode,
        ),
    ];
    for fam in Family::ALL.into_iter().filter(|f| f.has_pair()) {
        let id = format!("FAM-{fam}");
        let check_id = id.clone();
        v.push(entry(
            &id,
            &format!("closed form of {fam} equals the Sheffer sequence of its pair"),
            None,
            move |cfg: &SuiteConfig| {
                let mut out = Vec::new();
                for n in 1..=cfg.n_max {
                    for spec in spec_grid(fam, cfg) {
                        let mut p = Params::new().index("n", n);
                        for (k, v) in spec.params() {
                            p = p.value(k.name(), v.clone());
                        }
                        out.push(p);
                    }
                }
                out
            },
            move |ctx: &Ctx, p: &Params| {
                let n = n_at_least(&check_id, p, 1)?;
                let spec = spec_from(fam, p)?;
                Ok(Outcome::eq(ctx.family(&spec, n)?, ctx.engine(&spec, n)?))
            },
        ));
    }
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

fn ab_grid(cfg: &SuiteConfig) -> Vec<Params> {
    let samples = with_zero(&cfg.abc);
    let mut out = Vec::new();
    for n in 1..=cfg.n_max {
        for a in &samples {
            for b in &samples {
                out.push(Params::new().index("n", n).value("a", a.clone()).value("b", b.clone()));
            }
        }
    }
    out
}

/// Runs one check with a truncation order sized for its `n`.
pub fn run_identity(id: &str, params: &Params) -> Result<CheckResult> {
    let n = params.get_index("n").unwrap_or(0);
    run_identity_with(&Ctx::new(2 * n + 4, Tables::default()), id, params)
}

/// Runs one check in a given context. Parameter errors are returned as
/// errors rather than as a failed result.
pub fn run_identity_with(ctx: &Ctx, id: &str, params: &Params) -> Result<CheckResult> {
    let check = find(id)?;
    let result = check.run(ctx, params);
    if result.status == Status::Error {
        let reason = result
            .witness
            .as_ref()
            .and_then(|w| w.reason.clone())
            .unwrap_or_default();
        return Err(Error::OutOfDomain {
            id: id.to_string(),
            reason,
        });
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ConfigEcho {
    pub n_max: usize,
    pub trunc_order: usize,
    pub ids: Vec<String>,
    pub abc: Vec<String>,
    pub orders: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct EngineInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub trunc_order: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub engine: EngineInfo,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Zeroes every timing field so that reports compare byte for byte.
    pub fn zero_timings(&mut self) {
        self.engine.elapsed_ms = 0;
        for r in &mut self.results {
            r.elapsed_us = 0;
        }
    }
}

/// Runs every selected check over its grid. Checks run concurrently; the
/// report is sorted by id, then parameters.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let ctx = cfg.ctx();
    let selected: Vec<&IdentityCheck> = catalog()
        .iter()
        .filter(|c| cfg.ids.is_empty() || cfg.ids.contains(&c.id))
        .collect();
    let jobs: Vec<(&IdentityCheck, Params)> = selected
        .iter()
        .flat_map(|c| c.grid(cfg).into_iter().map(move |p| (*c, p)))
        .collect();
    let mut results: Vec<CheckResult> = jobs.par_iter().map(|(c, p)| c.run(&ctx, p)).collect();
    results.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.params.cmp(&b.params)));
    let passed = results.iter().filter(|r| r.passed()).count();
    let mut ids: Vec<String> = selected.iter().map(|c| c.id.clone()).collect();
    ids.sort();
    Ok(Report {
        config: ConfigEcho {
            n_max: cfg.n_max,
            trunc_order: cfg.trunc(),
            ids,
            abc: cfg.abc.iter().map(format_rational).collect(),
            orders: cfg.orders.iter().map(format_rational).collect(),
        },
        failed: results.len() - passed,
        passed,
        results,
        engine: EngineInfo {
            name: ENGINE_NAME,
            version: ENGINE_VERSION,
            trunc_order: cfg.trunc(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str, p: Params) -> CheckResult {
        run_identity(id, &p).unwrap()
    }

    #[test]
    fn hand_evaluated_instances() {
        assert!(run("T9a", Params::new().index("n", 1)).passed());
        assert!(run("T1b", Params::new().index("n", 3).index("m", 0)).passed());
        assert!(run("T8", Params::new().index("n", 1)).passed());
        assert!(run("T9b", Params::new().index("n", 1)).passed());
    }

    #[test]
    fn unknown_and_out_of_domain() {
        assert!(matches!(
            run_identity("NOSUCH", &Params::new()),
            Err(Error::UnknownIdentity(_))
        ));
        let e = run_identity("T1b", &Params::new().index("n", 3).index("m", 2));
        assert!(matches!(e, Err(Error::OutOfDomain { .. })));
        let e = run_identity("L2", &Params::new().index("n", 2).value("c", int(0)));
        assert!(e.is_err());
    }

    #[test]
    fn sampling_extends_to_degree_bound() {
        let s = extend_samples(&[int(1), int(2), int(3)], 4);
        assert_eq!(s, vec![int(1), int(2), int(3), int(4), int(5), int(6)]);
        let s = extend_samples(&[int(0), rat(1, 2)], 1);
        assert_eq!(s, vec![int(0), rat(1, 2), int(1)]);
    }

    #[test]
    fn egf_power_counts_compositions() {
        // (e^t)^n has EGF coefficients n^m
        let w = vec![int(1); 6];
        assert_eq!(egf_power(&w, 3), (0..6).map(|m| pow_int(&int(3), m)).collect::<Vec<_>>());
    }

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig {
            n_max: 3,
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg).unwrap();
        let bad: Vec<_> = report.results.iter().filter(|r| !r.passed()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert!(report.passed > 0);
    }

    #[test]
    fn short_truncation_is_reported_not_passed() {
        let cfg = SuiteConfig {
            n_max: 4,
            trunc_order: Some(2),
            ids: vec!["X44".into(), "FAM-abel".into(), "X13".into()],
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg).unwrap();
        for r in &report.results {
            let n = match r.params.0.get("n") {
                Some(ParamValue::Index(n)) => *n,
                _ => unreachable!(),
            };
            if n > 3 {
                assert_eq!(r.status, Status::InsufficientOrder, "{r:?}");
            }
            assert_ne!(r.status, Status::Fail, "{r:?}");
        }
    }

    #[test]
    fn params_parse_and_order() {
        let mut p = Params::new();
        p.parse_insert("n", "3").unwrap();
        p.parse_insert("alpha", "-3/2").unwrap();
        assert_eq!(p.to_string(), "alpha=-3/2 n=3");
        assert!(p.parse_insert("m", "x").is_err());
        assert!(p.parse_insert("n", "-1").is_err());
        assert!(Params::new().index("n", 2) < Params::new().index("n", 10));
    }
}
