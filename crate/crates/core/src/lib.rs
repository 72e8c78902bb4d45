//! Exact umbral calculus over the rationals.
//!
//! Truncated power series ([`series`]) act on polynomials ([`poly`],
//! [`operator`]); Sheffer sequences are produced from a pair `(g, f)` by two
//! independent routes ([`umbral`]); [`families`] catalogues the classical
//! sequences with their closed forms; [`identities`] registers every
//! polynomial identity as an executable exact check.

pub mod arith;
pub mod error;
pub mod families;
pub mod identities;
pub mod operator;
pub mod poly;
pub mod series;
pub mod umbral;

pub use arith::Rational;
pub use error::{Error, Result};
pub use poly::{BivariatePolynomial, Polynomial};
pub use series::Series;
pub use umbral::{BivariateSeries, ShefferPair};
