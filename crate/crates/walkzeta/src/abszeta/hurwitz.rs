//! Classical Hurwitz zeta function by Euler–Maclaurin summation.
//!
//! `ζ(s, a) = Σ_{n ≥ 0} (n + a)^{-s}` for real `a > 0`, analytically
//! continued to all complex `s ≠ 1`.  The evaluation sums the first terms
//! directly until the argument is comfortably large, then closes with the
//! Euler–Maclaurin correction
//!
//! ```text
//! X^{1-s}/(s-1) + X^{-s}/2 + Σ_{k≥1} B_{2k}/(2k)! · (s)_{2k-1} · X^{-s-2k+1}
//! ```
//!
//! whose error is governed by the first omitted term.  This routine is kept
//! deliberately independent of the general multiple-zeta ladder so the two
//! can be cross-checked against each other.

use super::bernoulli::barnes_bernoulli_coeffs;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::sync::OnceLock;

/// Correction terms kept in the Euler–Maclaurin tail.
const ORDER: usize = 14;

/// Even-index classical Bernoulli numbers over factorials, `B_{2k}/(2k)!`
/// for `k = 1..=ORDER`, as floats.
fn even_bernoulli() -> &'static [f64] {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let b = barnes_bernoulli_coeffs(&[1], 2 * ORDER + 2);
        (1..=ORDER)
            .map(|k| b[2 * k].to_f64().expect("small rational fits in f64"))
            .collect()
    })
}

/// Hurwitz zeta `ζ(s, a)` for real `a > 0` and complex `s` away from the
/// pole at `s = 1`.
///
/// Panics when `a ≤ 0` or `s` is within `1e-9` of the pole.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Complex64 {
    assert!(a > 0.0, "the shift argument must be positive");
    assert!(
        (s - Complex64::new(1.0, 0.0)).norm() > 1e-9,
        "pole at s = 1"
    );
    // Push the cutoff far enough that consecutive tail terms shrink by
    // roughly (|s| + 2·ORDER)/(2π X) ≈ 0.3 per order.
    let x_min = (s.norm() + 2.0 * ORDER as f64 + 4.0) / 1.9;
    let direct = (x_min - a).ceil().max(0.0) as usize;

    let mut sum = Complex64::default();
    for n in 0..direct {
        sum += (-s * (a + n as f64).ln()).exp();
    }

    let x = a + direct as f64;
    let lx = x.ln();
    sum += ((1.0 - s) * lx).exp() / (s - 1.0);
    sum += 0.5 * (-s * lx).exp();

    // Rising factorial (s)_{2k-1} = s (s+1) … (s + 2k - 2).
    let mut rising = s;
    for (k, b2k) in even_bernoulli().iter().enumerate() {
        let k = k + 1;
        sum += *b2k * rising * ((-s - (2 * k - 1) as f64) * lx).exp();
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
    }
    sum
}
