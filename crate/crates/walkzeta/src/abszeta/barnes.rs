//! Multiple zeta, gamma, and sine functions of Barnes type.
//!
//! For positive integer weights `ω = (ω_1, …, ω_r)` and `x > 0` the multiple
//! zeta function
//!
//! ```text
//! ζ_r(s, x, ω) = Σ_{n ∈ Z_{≥0}^r} (x + n·ω)^{-s}
//! ```
//!
//! converges for `Re s > r` and continues meromorphically with at most
//! simple poles at `s = 1, …, r`.  The evaluator repeatedly splits off the
//! terms with smallest index in the largest weight,
//!
//! ```text
//! ζ_r(s, x) = ζ_{r-1}(s, x) + ζ_r(s, x + ω_r) ,
//! ```
//!
//! until the argument is large, then switches to the asymptotic expansion
//!
//! ```text
//! ζ_r(s, X) ≈ Σ_{k < K} b_k · (Γ(s + k - r)/Γ(s)) · X^{r - k - s} ,
//! ```
//!
//! where the `b_k` are the weighted Bernoulli coefficients of
//! [`barnes_bernoulli_coeffs`] and the Γ-ratios are rational functions of
//! `s`.  Every shifted argument stays on the lattice `x + Z`, so values are
//! memoized per integer offset; this makes whole families of evaluations at
//! integer-shifted arguments (as needed by the subset sums of the zeta
//! functions of product forms) essentially free.
//!
//! The multiple gamma function enters through its logarithm,
//! `log Γ_r(x, ω) = ∂_s ζ_r(s, x, ω)|_{s=0}`, evaluated by the same ladder
//! with the tail differentiated term by term, and the multiple sine function
//! is the reflection combination `S_r(x) = Γ_r(x)^{-1} Γ_r(ω_1+…+ω_r - x)^{(-1)^r}`.

use super::bernoulli::barnes_bernoulli_coeffs;
use super::AbsZetaError;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Tuning knobs for the ladder-plus-tail evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarnesEvalConfig {
    /// Minimum number of ladder shifts in the top weight before the
    /// asymptotic tail may take over, regardless of argument size.  Useful
    /// for consistency cross-checks; `0` lets the error model decide alone.
    pub min_shifts: usize,
    /// Number of terms kept in the asymptotic expansion.
    pub expansion_order: usize,
    /// Requested relative accuracy, estimated by the first omitted term.
    pub target_rel_tol: f64,
    /// Retry once with doubled shift floor and expansion order when the
    /// estimate misses `target_rel_tol`; error out otherwise.
    pub allow_escalation: bool,
}

impl Default for BarnesEvalConfig {
    fn default() -> Self {
        Self {
            min_shifts: 0,
            expansion_order: 24,
            target_rel_tol: 1e-10,
            allow_escalation: true,
        }
    }
}

/// Run `eval` under `cfg`, escalating once if the reported first-omitted-term
/// estimate misses the requested tolerance.
pub(crate) fn with_escalation<T>(
    cfg: &BarnesEvalConfig,
    mut eval: impl FnMut(&BarnesEvalConfig) -> (T, f64),
) -> Result<T, AbsZetaError> {
    let (value, rel) = eval(cfg);
    if rel <= cfg.target_rel_tol {
        return Ok(value);
    }
    if cfg.allow_escalation {
        let harder = BarnesEvalConfig {
            min_shifts: (cfg.min_shifts * 2).max(8),
            expansion_order: cfg.expansion_order * 2,
            ..*cfg
        };
        let (value, rel) = eval(&harder);
        if rel <= cfg.target_rel_tol {
            return Ok(value);
        }
        return Err(AbsZetaError::Accuracy {
            achieved: rel,
            target: cfg.target_rel_tol,
        });
    }
    Err(AbsZetaError::Accuracy {
        achieved: rel,
        target: cfg.target_rel_tol,
    })
}

/// Reject evaluation points on the pole set `{1, …, r}`.
pub(crate) fn check_poles(s: Complex64, r: usize) -> Result<(), AbsZetaError> {
    for i in 1..=r {
        if (s - i as f64).norm() < 1e-9 {
            return Err(AbsZetaError::Pole { s, order: r });
        }
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn harmonic(n: usize) -> f64 {
    (1..=n).fold(0.0, |acc, i| acc + 1.0 / i as f64)
}

/// `Γ(s + k - r) / Γ(s)` as a rational function of `s`.
fn gamma_ratio(s: Complex64, k: usize, r: usize) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    if k < r {
        for i in 1..=(r - k) {
            v /= s - i as f64;
        }
    } else {
        for j in 0..(k - r) {
            v *= s + j as f64;
        }
    }
    v
}

/// Geometry shared by the zeta- and gamma-mode ladders: weights sorted
/// ascending, per-level Bernoulli coefficients, and per-level argument
/// thresholds beyond which the asymptotic tail is trusted.
struct LadderShape {
    omega: Vec<u64>,
    base: f64,
    coeffs: Vec<Vec<f64>>,
    x_big: Vec<f64>,
    order: usize,
}

impl LadderShape {
    fn new(omega: &[u64], base: f64, s_mag: f64, cfg: &BarnesEvalConfig) -> Self {
        assert!(!omega.is_empty(), "the weight list must be nonempty");
        assert!(omega.iter().all(|&w| w > 0), "weights must be positive");
        let mut omega = omega.to_vec();
        omega.sort_unstable();
        let order = cfg.expansion_order;
        assert!(
            order >= omega.len() + 4,
            "expansion order too small for {} weights",
            omega.len()
        );

        // First omitted tail term shrinks like ρ^order with
        // ρ ≈ ω_max (order + |s|) / (2π X); choose X so ρ^order is safely
        // below the target.
        let rho = (0.1 * cfg.target_rel_tol)
            .powf(1.0 / order as f64)
            .min(0.45);

        let mut coeffs = vec![Vec::new()];
        let mut x_big = vec![f64::INFINITY];
        for r in 1..=omega.len() {
            coeffs.push(
                barnes_bernoulli_coeffs(&omega[..r], order + 1)
                    .iter()
                    .map(|b| b.to_f64().expect("coefficient fits in f64"))
                    .collect(),
            );
            let w_max = omega[r - 1] as f64;
            let from_error = w_max * (order as f64 + s_mag + 2.0) / (2.0 * PI * rho);
            let from_floor = base + cfg.min_shifts as f64 * w_max;
            x_big.push(from_error.max(from_floor).max(4.0));
        }
        Self {
            omega,
            base,
            coeffs,
            x_big,
            order,
        }
    }

    fn levels(&self) -> usize {
        self.omega.len()
    }
}

/// Memoized evaluator for `ζ_r(s, base + offset, ω)` on an integer lattice
/// of offsets.
pub(crate) struct ZetaLadder {
    shape: LadderShape,
    s: Complex64,
    memo: Vec<HashMap<i64, Complex64>>,
    worst_rel: f64,
}

impl ZetaLadder {
    pub(crate) fn new(omega: &[u64], base: f64, s: Complex64, cfg: &BarnesEvalConfig) -> Self {
        let shape = LadderShape::new(omega, base, s.norm(), cfg);
        let memo = vec![HashMap::new(); shape.levels() + 1];
        Self {
            shape,
            s,
            memo,
            worst_rel: 0.0,
        }
    }

    /// Largest relative first-omitted-term estimate seen so far.
    pub(crate) fn worst_rel(&self) -> f64 {
        self.worst_rel
    }

    /// `ζ_r(s, base + offset, ω)` at the full weight count.
    pub(crate) fn eval_offset(&mut self, offset: i64) -> Complex64 {
        self.eval(self.shape.levels(), offset)
    }

    fn eval(&mut self, r: usize, offset: i64) -> Complex64 {
        let x = self.shape.base + offset as f64;
        debug_assert!(x > 0.0, "ladder argument must stay positive");
        if r == 0 {
            return (-self.s * x.ln()).exp();
        }
        if let Some(&v) = self.memo[r].get(&offset) {
            return v;
        }
        let v = if x >= self.shape.x_big[r] {
            self.tail(r, x)
        } else {
            let step = self.shape.omega[r - 1] as i64;
            self.eval(r - 1, offset) + self.eval(r, offset + step)
        };
        self.memo[r].insert(offset, v);
        v
    }

    fn tail(&mut self, r: usize, x: f64) -> Complex64 {
        let lx = x.ln();
        let term = |k: usize, b: f64| -> Complex64 {
            if b == 0.0 {
                return Complex64::default();
            }
            let exponent = (Complex64::from((r as f64) - (k as f64)) - self.s) * lx;
            b * gamma_ratio(self.s, k, r) * exponent.exp()
        };
        let b = &self.shape.coeffs[r];
        let mut sum = Complex64::default();
        for k in 0..self.shape.order {
            sum += term(k, b[k]);
        }
        let estimate = term(self.shape.order, b[self.shape.order]).norm();
        let rel = estimate / sum.norm().max(f64::MIN_POSITIVE);
        self.worst_rel = self.worst_rel.max(rel);
        sum
    }
}

/// Memoized evaluator for `log Γ_r(base + offset, ω)`, the `s`-derivative of
/// the multiple zeta ladder at `s = 0`.
pub(crate) struct GammaLadder {
    shape: LadderShape,
    memo: Vec<HashMap<i64, f64>>,
    worst_rel: f64,
}

impl GammaLadder {
    pub(crate) fn new(omega: &[u64], base: f64, cfg: &BarnesEvalConfig) -> Self {
        let shape = LadderShape::new(omega, base, 0.0, cfg);
        let memo = vec![HashMap::new(); shape.levels() + 1];
        Self {
            shape,
            memo,
            worst_rel: 0.0,
        }
    }

    pub(crate) fn worst_rel(&self) -> f64 {
        self.worst_rel
    }

    /// `log Γ_r(base + offset, ω)` at the full weight count.
    pub(crate) fn eval_offset(&mut self, offset: i64) -> f64 {
        self.eval(self.shape.levels(), offset)
    }

    fn eval(&mut self, r: usize, offset: i64) -> f64 {
        let x = self.shape.base + offset as f64;
        debug_assert!(x > 0.0, "ladder argument must stay positive");
        if r == 0 {
            return -x.ln();
        }
        if let Some(&v) = self.memo[r].get(&offset) {
            return v;
        }
        let v = if x >= self.shape.x_big[r] {
            self.tail(r, x)
        } else {
            let step = self.shape.omega[r - 1] as i64;
            self.eval(r - 1, offset) + self.eval(r, offset + step)
        };
        self.memo[r].insert(offset, v);
        v
    }

    /// The asymptotic tail differentiated in `s` at `s = 0`: with `m = r - k`,
    ///
    /// * `k < r`:  `b_k X^m (-1)^m/m! · (H_m - log X)`
    /// * `k = r`:  `-b_r log X`
    /// * `k > r`:  `b_k (k-r-1)! X^{r-k}`
    fn tail(&mut self, r: usize, x: f64) -> f64 {
        let lx = x.ln();
        let term = |k: usize, b: f64| -> f64 {
            if b == 0.0 {
                return 0.0;
            }
            if k < r {
                let m = r - k;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                b * x.powi(m as i32) * sign / factorial(m) * (harmonic(m) - lx)
            } else if k == r {
                -b * lx
            } else {
                b * factorial(k - r - 1) * x.powi(-((k - r) as i32))
            }
        };
        let b = &self.shape.coeffs[r];
        let mut sum = 0.0;
        for k in 0..self.shape.order {
            sum += term(k, b[k]);
        }
        let estimate = term(self.shape.order, b[self.shape.order]).abs();
        let rel = estimate / sum.abs().max(1.0);
        self.worst_rel = self.worst_rel.max(rel);
        sum
    }
}

/// Barnes multiple zeta function `ζ_r(s, x, ω)` for `x > 0`, analytically
/// continued in `s` away from the poles `{1, …, r}`.
pub fn barnes_zeta(
    omega: &[u64],
    x: f64,
    s: Complex64,
    cfg: &BarnesEvalConfig,
) -> Result<Complex64, AbsZetaError> {
    if x <= 0.0 {
        return Err(AbsZetaError::NonpositiveArgument { x });
    }
    check_poles(s, omega.len())?;
    with_escalation(cfg, |c| {
        let mut ladder = ZetaLadder::new(omega, x, s, c);
        (ladder.eval_offset(0), ladder.worst_rel())
    })
}

/// `log Γ_r(x, ω)`, the `s`-derivative at `s = 0` of the multiple zeta
/// function, for `x > 0`.
pub fn log_multiple_gamma(
    omega: &[u64],
    x: f64,
    cfg: &BarnesEvalConfig,
) -> Result<f64, AbsZetaError> {
    if x <= 0.0 {
        return Err(AbsZetaError::NonpositiveArgument { x });
    }
    with_escalation(cfg, |c| {
        let mut ladder = GammaLadder::new(omega, x, c);
        (ladder.eval_offset(0), ladder.worst_rel())
    })
}

/// `log S_r(x, ω) = -log Γ_r(x) + (-1)^r log Γ_r(ω_1 + … + ω_r - x)`.
pub(crate) fn log_multiple_sine(
    omega: &[u64],
    x: f64,
    cfg: &BarnesEvalConfig,
) -> Result<f64, AbsZetaError> {
    let width: f64 = omega.iter().map(|&w| w as f64).sum();
    if !(x > 0.0 && x < width) {
        return Err(AbsZetaError::OutsideStrip { x, width });
    }
    let lg = log_multiple_gamma(omega, x, cfg)?;
    let lg_reflected = log_multiple_gamma(omega, width - x, cfg)?;
    let sign = if omega.len() % 2 == 0 { 1.0 } else { -1.0 };
    Ok(-lg + sign * lg_reflected)
}

/// Multiple sine function `S_r(x, ω)` on the open strip `0 < x < ω_1 + … + ω_r`.
pub fn multiple_sine(omega: &[u64], x: f64, cfg: &BarnesEvalConfig) -> Result<f64, AbsZetaError> {
    log_multiple_sine(omega, x, cfg).map(f64::exp)
}

/// Direct lattice summation of the defining series, with a rigorous tail
/// bound; only usable in the comfortably convergent regime
/// `Re s ≥ r + 1.25`.  Slow by design — this is a test oracle.
pub fn brute_force_barnes_zeta(omega: &[u64], x: f64, s: Complex64, rel_tol: f64) -> Complex64 {
    let r = omega.len();
    assert!(r > 0 && omega.iter().all(|&w| w > 0));
    assert!(x > 0.0, "argument must be positive");
    let sigma = s.re;
    assert!(
        sigma >= r as f64 + 1.25,
        "oracle needs a comfortably convergent exponent"
    );
    let mut sorted = omega.to_vec();
    sorted.sort_unstable();

    let mut cutoff: usize = 256;
    loop {
        // counts[k] = number of tuples n ≥ 0 with n·ω = k, exactly.
        let mut counts = vec![0u128; cutoff + 1];
        counts[0] = 1;
        for &w in &sorted {
            let w = w as usize;
            for k in w..=cutoff {
                counts[k] += counts[k - w];
            }
        }
        let mut sum = Complex64::default();
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                sum += (c as f64) * (-s * (x + k as f64).ln()).exp();
            }
        }
        // The count of representations of k is at most
        // ∏_{j ≥ 2} (k/ω_j + 1) — fix all but the smallest weight's index —
        // so the tail beyond the cutoff is bounded by an explicit integral.
        let v = cutoff as f64;
        let mut lead = 1.0;
        for &w in &sorted[1..] {
            lead *= (1.0 + w as f64 / v) / w as f64;
        }
        let tail = lead * v.powf(r as f64 - sigma) / (sigma - r as f64);
        if tail <= rel_tol * sum.norm() {
            return sum;
        }
        cutoff *= 2;
        assert!(
            cutoff <= 1 << 22,
            "tail bound cannot reach the tolerance in reasonable time"
        );
    }
}
