//! Series acting on polynomials: `t^k` is the `k`-th derivative, and
//! `⟨f(t) | p(x)⟩` is the evaluation pairing.

use num_traits::Zero;

use crate::arith::{binom_int, factorial, int, neg_one_pow, Rational};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::Series;

fn ensure_order(f: &Series, p: &Polynomial) -> Result<()> {
    let deg = p.degree().unwrap_or(0);
    if f.trunc_order() < deg {
        return Err(Error::SeriesTooShort {
            needed: deg,
            available: f.trunc_order(),
        });
    }
    Ok(())
}

/// `f(t) p(x) = Σ_k c_k p^{(k)}(x)`.
pub fn apply_operator(f: &Series, p: &Polynomial) -> Result<Polynomial> {
    ensure_order(f, p)?;
    let deg = match p.degree() {
        None => return Ok(Polynomial::zero()),
        Some(d) => d,
    };
    let mut out = vec![Rational::zero(); deg + 1];
    // [x^j] p^{(k)} = c_{j+k} (j+k)! / j!
    for (k, ck) in f.coeffs()[..=deg].iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate().take(deg + 1 - k) {
            let m = j + k;
            let c = p.coeff(m);
            if c.is_zero() {
                continue;
            }
            *slot += ck * c * factorial(m) / factorial(j);
        }
    }
    Ok(Polynomial::new(out))
}

/// `⟨f(t) | p(x)⟩ = Σ_n n! [t^n]f · [x^n]p`.
pub fn pairing(f: &Series, p: &Polynomial) -> Result<Rational> {
    ensure_order(f, p)?;
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| factorial(n) * f.coeff(n) * c)
        .sum())
}

/// `Δ^k p(x) = Σ_j binom(k, j) (-1)^{k-j} p(x + j)`.
pub fn forward_difference(p: &Polynomial, k: i64) -> Result<Polynomial> {
    if k < 0 {
        return Err(Error::NegativeIndex(k));
    }
    Ok((0..=k)
        .map(|j| {
            p.shift(&int(j)).scale(&(binom_int(k, j) * neg_one_pow((k - j) as usize)))
        })
        .sum())
}
