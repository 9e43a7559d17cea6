//! Absolute zeta functions of the product forms attached to periodic walks.
//!
//! A product form `f(x) = ε x^{l/2} ∏_i (x^{m_i} - 1) / ∏_j (x^{n_j} - 1)`
//! with at least one denominator factor decays like `x^{deg f}` with
//! `deg f = l/2 + Σm - Σn`.  Writing `x = e^t` and using
//! `(e^{mt} - 1) = e^{mt}(1 - e^{-mt})` together with the subset expansion
//! `∏_i (1 - e^{-m_i t}) = Σ_I (-1)^{|I|} e^{-m_I t}` turns the completed
//! transform
//!
//! ```text
//! Z_f(w, s) = 1/Γ(w) ∫_0^∞ f(e^t) e^{-st} t^{w-1} dt
//! ```
//!
//! into a finite signed sum of Barnes multiple zeta functions,
//!
//! ```text
//! Z_f(w, s) = ε Σ_I (-1)^{|I|} ζ_b(w, s - deg f + m_I, ω) ,
//! ```
//!
//! whose weight list ω is the multiset of denominator exponents.  The
//! absolute zeta function is `ζ_f(s) = exp(∂_w Z_f|_{w=0})`, a product of
//! multiple gamma values, and it satisfies the functional equation
//!
//! ```text
//! ζ_f(D - s)^C = ε_f(s) · ζ_f(s) ,    D = l + Σm - Σn,  C = (-1)^{a-b},
//! ```
//!
//! where `ε_f` is the corresponding product of multiple sine values.
//! [`AbsZetaPlan`] freezes the combinatorial data of the expansion once;
//! the evaluators then share a single memoized ladder per lattice of
//! integer-shifted arguments, so the `2^a` subset terms cost little more
//! than one.
//!
//! Numeric verification sticks to real `s` (and real `w` where a comparison
//! oracle is involved) so that every gamma and sine argument stays on the
//! positive axis.

mod barnes;
mod bernoulli;
mod hurwitz;
mod mellin;
mod series;

pub use barnes::{
    barnes_zeta, brute_force_barnes_zeta, log_multiple_gamma, multiple_sine, BarnesEvalConfig,
};
pub use bernoulli::barnes_bernoulli_coeffs;
pub use hurwitz::hurwitz_zeta;
pub use mellin::z_f_mellin_oracle;

use crate::zeta::ZetaProductForm;
use barnes::{check_poles, with_escalation, GammaLadder, ZetaLadder};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Failure modes of the numeric evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbsZetaError {
    /// The requested point sits on the pole set `{1, …, r}` of a multiple
    /// zeta function of rank `r`.
    #[error("s = {s} lies on the pole set {{1, …, {order}}}")]
    Pole { s: Complex64, order: usize },
    /// Gamma- and zeta-ladder arguments must be positive.
    #[error("ladder argument must be positive, got {x}")]
    NonpositiveArgument { x: f64 },
    /// Sine arguments must stay strictly inside the reflection strip.
    #[error("sine argument {x} outside the open strip (0, {width})")]
    OutsideStrip { x: f64, width: f64 },
    /// The asymptotic tail could not reach the requested tolerance even
    /// after escalation.
    #[error("tail estimate reached {achieved:.3e}, short of the requested {target:.3e}")]
    Accuracy { achieved: f64, target: f64 },
    /// A structural precondition on the evaluation point failed.
    #[error("outside the evaluator's domain: {0}")]
    Domain(String),
}

/// One subset of the numerator exponents in the expansion of `Z_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetTerm {
    /// Sum of the numerator exponents selected by the subset.
    pub shift: u64,
    /// `(-1)^{subset size}`.
    pub parity: i8,
}

/// Frozen combinatorial data for evaluating the absolute zeta function of a
/// product form: weight list, subset shifts, signs, and the constants of the
/// functional equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsZetaPlan {
    /// The product form the plan was built from.
    pub form: ZetaProductForm,
    /// Degree `l/2 + Σm - Σn` of the form; arguments are shifted by it.
    pub deg_f: i64,
    /// Weight `D = l + Σm - Σn` of the functional equation.
    pub weight_d: i64,
    /// Orientation `C = (-1)^{a-b}` of the functional equation.
    pub weight_c: i8,
    /// Barnes weight list: the denominator exponents, ascending.
    pub omega: Vec<u64>,
    /// All `2^a` subset terms, sorted by shift.
    pub terms: Vec<SubsetTerm>,
    /// Global sign ε of the form.
    pub epsilon_sign: i8,
}

/// Expand a product form into its evaluation plan.
///
/// Panics when the form has no denominator factor (such forms have no
/// convergent defining transform) or an odd power shift.
pub fn plan_absolute_zeta(form: &ZetaProductForm) -> AbsZetaPlan {
    assert!(
        !form.denom_exps.is_empty(),
        "the form must have at least one denominator factor"
    );
    assert!(form.l % 2 == 0, "the power shift must be even");
    let a = form.numer_exps.len();
    assert!(a < 20, "too many numerator factors to expand over subsets");

    let mut terms = Vec::with_capacity(1 << a);
    for mask in 0u32..(1u32 << a) {
        let shift: u64 = form
            .numer_exps
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &m)| m)
            .sum();
        let parity = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        terms.push(SubsetTerm { shift, parity });
    }
    terms.sort_by_key(|t| (t.shift, t.parity));

    let mut omega = form.denom_exps.clone();
    omega.sort_unstable();
    AbsZetaPlan {
        deg_f: form.degree(),
        weight_d: form.weight_d(),
        weight_c: form.weight_c(),
        omega,
        terms,
        epsilon_sign: form.sign,
        form: form.clone(),
    }
}

fn real_base(s: f64, plan: &AbsZetaPlan) -> Result<f64, AbsZetaError> {
    let base = s - plan.deg_f as f64;
    if base <= 0.0 {
        return Err(AbsZetaError::Domain(format!(
            "need s > deg f = {}",
            plan.deg_f
        )));
    }
    Ok(base)
}

/// `Z_f(w, s)`: the signed sum of Barnes zeta values over the subset terms.
///
/// `w` may be complex (away from the poles `{1, …, b}`); `s` must be real
/// and exceed `deg f` so that every ladder argument is positive.
pub fn z_f(
    w: Complex64,
    s: Complex64,
    plan: &AbsZetaPlan,
    cfg: &BarnesEvalConfig,
) -> Result<Complex64, AbsZetaError> {
    if s.im != 0.0 {
        return Err(AbsZetaError::Domain(
            "the argument s must be real so the ladder arguments stay positive".into(),
        ));
    }
    let base = real_base(s.re, plan)?;
    check_poles(w, plan.omega.len())?;
    let sum = with_escalation(cfg, |c| {
        let mut ladder = ZetaLadder::new(&plan.omega, base, w, c);
        let mut acc = Complex64::default();
        for t in &plan.terms {
            acc += (t.parity as f64) * ladder.eval_offset(t.shift as i64);
        }
        (acc, ladder.worst_rel())
    })?;
    Ok(plan.epsilon_sign as f64 * sum)
}

fn log_zeta_f(s: f64, plan: &AbsZetaPlan, cfg: &BarnesEvalConfig) -> Result<f64, AbsZetaError> {
    let base = real_base(s, plan)?;
    let sum = with_escalation(cfg, |c| {
        let mut ladder = GammaLadder::new(&plan.omega, base, c);
        let mut acc = 0.0;
        for t in &plan.terms {
            acc += t.parity as f64 * ladder.eval_offset(t.shift as i64);
        }
        (acc, ladder.worst_rel())
    })?;
    Ok(plan.epsilon_sign as f64 * sum)
}

/// The absolute zeta function `ζ_f(s) = exp(∂_w Z_f(w, s)|_{w=0})`, a signed
/// product of multiple gamma values.  Defined (and positive) for real
/// `s > deg f`.
pub fn zeta_f(s: f64, plan: &AbsZetaPlan, cfg: &BarnesEvalConfig) -> Result<f64, AbsZetaError> {
    log_zeta_f(s, plan, cfg).map(f64::exp)
}

fn log_epsilon_f(
    s: f64,
    plan: &AbsZetaPlan,
    cfg: &BarnesEvalConfig,
) -> Result<f64, AbsZetaError> {
    let width: f64 = plan.omega.iter().map(|&w| w as f64).sum();
    let base = s - plan.deg_f as f64;
    let max_shift = plan.terms.iter().map(|t| t.shift).max().unwrap_or(0) as f64;
    if base <= 0.0 {
        return Err(AbsZetaError::OutsideStrip { x: base, width });
    }
    if base + max_shift >= width {
        return Err(AbsZetaError::OutsideStrip {
            x: base + max_shift,
            width,
        });
    }
    let reflect_sign = if plan.omega.len() % 2 == 0 { 1.0 } else { -1.0 };
    let sum = with_escalation(cfg, |c| {
        let mut direct = GammaLadder::new(&plan.omega, base, c);
        let mut reflected = GammaLadder::new(&plan.omega, width - base, c);
        let mut acc = 0.0;
        for t in &plan.terms {
            let log_sine = -direct.eval_offset(t.shift as i64)
                + reflect_sign * reflected.eval_offset(-(t.shift as i64));
            acc += t.parity as f64 * log_sine;
        }
        (acc, direct.worst_rel().max(reflected.worst_rel()))
    })?;
    Ok(plan.epsilon_sign as f64 * sum)
}

/// The functional-equation factor `ε_f(s) = ∏_I S_b(s - deg f + m_I, ω)^{±1}`,
/// with exponents `ε·(-1)^{|I|}`.  Defined for real `s` with every sine
/// argument inside the open strip `(0, ω_1 + … + ω_b)`.
pub fn epsilon_f(s: f64, plan: &AbsZetaPlan, cfg: &BarnesEvalConfig) -> Result<f64, AbsZetaError> {
    log_epsilon_f(s, plan, cfg).map(f64::exp)
}

/// Relative residual `|ζ_f(D-s)^C - ε_f(s) ζ_f(s)| / |ζ_f(D-s)^C|` of the
/// functional equation, computed in log space so large exponents cannot
/// overflow.  Both `s` and `D - s` must lie in the common domain, which for
/// the walk forms is the open interval `(D, 0)`.
pub fn functional_eq_residual(
    s: f64,
    plan: &AbsZetaPlan,
    cfg: &BarnesEvalConfig,
) -> Result<f64, AbsZetaError> {
    let d = plan.weight_d as f64;
    let log_lhs = plan.weight_c as f64 * log_zeta_f(d - s, plan, cfg)?;
    let log_rhs = log_epsilon_f(s, plan, cfg)? + log_zeta_f(s, plan, cfg)?;
    Ok((log_rhs - log_lhs).exp_m1().abs())
}
