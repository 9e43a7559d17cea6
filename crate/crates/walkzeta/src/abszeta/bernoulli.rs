//! Weighted Bernoulli coefficients for asymptotic tails.
//!
//! For a weight list `ω = (ω_1, …, ω_r)` of positive integers these are the
//! rational numbers `b_k` in the exact expansion
//!
//! ```text
//! t^r · ∏_j (1 - e^{-ω_j t})^{-1}  =  Σ_{k ≥ 0} b_k t^k ,
//! ```
//!
//! computed by truncated series inversion.  They drive the large-argument
//! expansions of the multiple zeta and gamma functions in [`super::barnes`].
//! For `ω = (1)` they reduce to the classical Bernoulli numbers over
//! factorials, `B_k / k!`, in the convention with `+1/2` at `k = 1`.

use super::series;
use crate::algebra::Rational;

/// First `count` coefficients `b_0, …, b_{count-1}` of
/// `t^r ∏_j (1 - e^{-ω_j t})^{-1}` for the weight list `omega`.
///
/// Panics when `omega` is empty or contains a zero weight.
pub fn barnes_bernoulli_coeffs(omega: &[u64], count: usize) -> Vec<Rational> {
    assert!(!omega.is_empty(), "the weight list must be nonempty");
    assert!(
        omega.iter().all(|&w| w > 0),
        "all weights must be positive"
    );
    if count == 0 {
        return Vec::new();
    }
    // ∏_j (1 - e^{-ω_j t})/t has constant term ∏ ω_j ≠ 0, so it inverts.
    let mut prod = series::one_minus_exp_neg_over_t(omega[0], count);
    for &w in &omega[1..] {
        let factor = series::one_minus_exp_neg_over_t(w, count);
        prod = series::mul_trunc(&prod, &factor, count);
    }
    series::inverse_trunc(&prod, count)
}
