//! Direct integral evaluation of the completed zeta transform, used as an
//! independent oracle for the subset-sum decomposition.
//!
//! For a product form `f` with `a` numerator and `b ≥ 1` denominator factors,
//!
//! ```text
//! Z_f(w, s) = 1/Γ(w) · ∫_0^∞ f(e^t) e^{-st} t^{w-1} dt ,
//! ```
//!
//! convergent for real `w > b - a` and `s > deg f`.  Near `t = 0` the
//! integrand behaves like `t^{w+a-b-1}` times an analytic function, so the
//! head `[0, t₀]` is integrated through an exact rational power series,
//! term by term against `∫ t^{α-1} e^{-st} dt`; the rest is adaptive Simpson
//! quadrature with an explicit exponential cutoff.  Nothing here shares code
//! with the ladder evaluator — that is the point.

use super::series;
use super::AbsZetaError;
use crate::zeta::ZetaProductForm;
use num_traits::ToPrimitive;
use statrs::function::gamma::gamma;

/// Series length for the head expansion; the head coefficients decay
/// geometrically by a factor ≈ t₀·n_max/2π ≤ 0.23 per order.
const HEAD_LEN: usize = 48;

/// `∫_0^{t0} t^{α-1} e^{-st} dt` by the everywhere-convergent expansion
/// `t0^α Σ_j (-s t0)^j / (j! (α + j))`.
fn truncated_power_exp_integral(alpha: f64, s: f64, t0: f64) -> f64 {
    debug_assert!(alpha > 0.0);
    let z = -s * t0;
    let mut coef = 1.0; // z^j / j!
    let mut sum = 0.0;
    for j in 0..200 {
        let term = coef / (alpha + j as f64);
        sum += term;
        // Terms only decrease monotonically once j exceeds |z|.
        if j as f64 >= z.abs() && term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        coef *= z / (j + 1) as f64;
    }
    t0.powf(alpha) * sum
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // Negated comparison so a NaN estimate terminates instead of recursing.
    if depth == 0 || !(delta.abs() > 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `Z_f(w, s)` by direct numerical Mellin integration, for real `w > b - a`
/// and `s > deg f`.
pub fn z_f_mellin_oracle(w: f64, s: f64, form: &ZetaProductForm) -> Result<f64, AbsZetaError> {
    let a = form.numer_exps.len();
    let b = form.denom_exps.len();
    assert!(b >= 1, "the form must have at least one denominator factor");
    assert!(form.l % 2 == 0, "the power shift must be even");
    if w <= (b as i64 - a as i64) as f64 {
        return Err(AbsZetaError::Domain(format!(
            "the transform needs w > {}",
            b as i64 - a as i64
        )));
    }
    let deg = form.degree();
    if s <= deg as f64 {
        return Err(AbsZetaError::Domain(format!(
            "the transform needs s > {deg}"
        )));
    }

    let n_max = *form.denom_exps.iter().max().expect("b >= 1") as f64;
    let t0 = 1.4 / n_max;

    // Head: exact series of G(t) = t^{b-a} f(e^t), a power series with
    // radius 2π/n_max, integrated termwise against t^{w+a-b-1} e^{-st}.
    let mut g = series::exp_series(form.l / 2, HEAD_LEN);
    for &m in &form.numer_exps {
        g = series::mul_trunc(&g, &series::expm1_over_t(m, HEAD_LEN), HEAD_LEN);
    }
    let mut den = vec![crate::algebra::rat(1, 1)];
    for &n in &form.denom_exps {
        den = series::mul_trunc(&den, &series::expm1_over_t(n, HEAD_LEN), HEAD_LEN);
    }
    g = series::mul_trunc(&g, &series::inverse_trunc(&den, HEAD_LEN), HEAD_LEN);
    if form.sign < 0 {
        for c in &mut g {
            *c = -c.clone();
        }
    }

    let alpha0 = w + a as f64 - b as f64;
    let mut head = 0.0;
    for (k, c) in g.iter().enumerate() {
        let c = c.to_f64().expect("series coefficient fits in f64");
        if c != 0.0 {
            head += c * truncated_power_exp_integral(alpha0 + k as f64, s, t0);
        }
    }

    // Cutoff T: beyond it the integrand is under e^{-46} of its scale.
    let rate = s - deg as f64;
    let mut t_end = t0 + 46.0 / rate;
    for _ in 0..3 {
        t_end = t0 + (46.0 + (w - 1.0).max(0.0) * t_end.ln().max(0.0)) / rate;
    }

    // The factors e^{mt} - 1 overflow long before the decaying envelope
    // e^{-(s - deg) t} brings the product back down, so the magnitude is
    // assembled in log space via ln(e^{mt} - 1) = mt + ln(1 - e^{-mt});
    // every factor is positive for t > 0, leaving only the global sign.
    let integrand = |t: f64| -> f64 {
        let mut ln_v = (form.l as f64 / 2.0 - s) * t + (w - 1.0) * t.ln();
        for &m in &form.numer_exps {
            let mt = m as f64 * t;
            ln_v += mt + (-(-mt).exp()).ln_1p();
        }
        for &n in &form.denom_exps {
            let nt = n as f64 * t;
            ln_v -= nt + (-(-nt).exp()).ln_1p();
        }
        form.sign as f64 * ln_v.exp()
    };

    let fa = integrand(t0);
    let fb = integrand(t_end);
    let fm = integrand(0.5 * (t0 + t_end));
    let rough = simpson(fa, fm, fb, t_end - t0);
    let tol = 1e-12 * (rough.abs() + head.abs() + 1e-30);
    let tail = adaptive_simpson(&integrand, t0, t_end, fa, fm, fb, rough, tol, 48);

    Ok((head + tail) / gamma(w))
}
