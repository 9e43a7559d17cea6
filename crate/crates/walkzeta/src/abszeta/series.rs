//! Exact truncated power series over the rationals.
//!
//! A series is a plain `Vec<Rational>` of coefficients `[c_0, c_1, …]`,
//! always handled to a fixed truncation length.  This tiny kernel backs the
//! generalized Bernoulli coefficients of the asymptotic tails and the local
//! expansions used by the integral oracle; everything here is exact.

use crate::algebra::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Multiply two truncated series, keeping `len` coefficients.
pub(crate) fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Invert a truncated series with nonzero constant term, keeping `len`
/// coefficients: the result `b` satisfies `a · b = 1 + O(t^len)`.
pub(crate) fn inverse_trunc(a: &[Rational], len: usize) -> Vec<Rational> {
    assert!(
        !a.is_empty() && !a[0].is_zero(),
        "series inversion needs a nonzero constant term"
    );
    if len == 0 {
        return Vec::new();
    }
    let inv0 = a[0].recip();
    let mut out = vec![Rational::zero(); len];
    out[0] = inv0.clone();
    for k in 1..len {
        let mut acc = Rational::zero();
        for j in 1..=k.min(a.len() - 1) {
            if a[j].is_zero() {
                continue;
            }
            acc += &a[j] * &out[k - j];
        }
        out[k] = -acc * &inv0;
    }
    out
}

/// Coefficients of `(1 - e^{-w t}) / t`: the `j`-th is `(-1)^j w^{j+1} / (j+1)!`.
pub(crate) fn one_minus_exp_neg_over_t(w: u64, len: usize) -> Vec<Rational> {
    scaled_exponential_series(&BigInt::from(w), len, true)
}

/// Coefficients of `(e^{w t} - 1) / t`: the `j`-th is `w^{j+1} / (j+1)!`.
pub(crate) fn expm1_over_t(w: u64, len: usize) -> Vec<Rational> {
    scaled_exponential_series(&BigInt::from(w), len, false)
}

/// Coefficients of `e^{c t}`: the `j`-th is `c^j / j!`.
pub(crate) fn exp_series(c: i64, len: usize) -> Vec<Rational> {
    let c = BigInt::from(c);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut out = Vec::with_capacity(len);
    for j in 0..len {
        if j > 0 {
            num *= &c;
            den *= BigInt::from(j as u64);
        }
        out.push(Rational::new(num.clone(), den.clone()));
    }
    out
}

fn scaled_exponential_series(w: &BigInt, len: usize, alternating: bool) -> Vec<Rational> {
    let mut num = w.clone();
    let mut den = BigInt::one();
    let mut out = Vec::with_capacity(len);
    for j in 0..len {
        den *= BigInt::from(j as u64 + 1);
        let c = Rational::new(num.clone(), den.clone());
        out.push(if alternating && j % 2 == 1 { -c } else { c });
        num *= w;
    }
    out
}
