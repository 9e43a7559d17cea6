//! Characteristic polynomials of walk operators, exactly.
//!
//! det(xI - U) is recovered by evaluation–interpolation: exact determinants
//! of xI - U at small integer abscissae, then Newton divided differences.
//! Two structural facts cut the work. The determinants run fraction-free
//! over Z[√2] after clearing denominators once (`ScaledMatrix`). And because
//! U is real orthogonal its eigenvalues are closed under inversion, so
//! xᵈ·f(1/x) = σ·f(x) with σ = f(0) = ±1; after peeling the forced roots at
//! ±1 the remaining factor is palindromic and collapses to a polynomial g of
//! half the degree in y = x + 1/x, which needs only half the samples. The
//! closed product formulas for the spectra are kept separate as
//! floating-point evaluators so the two routes stay independent and can be
//! cross-checked against each other.

use num_complex::Complex64;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, QuadRat, Rational};
use crate::walk::{CoinFamily, CoinType, ScaledMatrix, WalkOperator, WalkSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("no closed product formula is wired for {family:?} with coin type {coin_type:?}")]
    UnsupportedFamily { family: CoinFamily, coin_type: CoinType },
}

/// Exact characteristic polynomial det(xI - U) of a walk operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub spec: WalkSpec,
    pub poly: Poly,
    /// Whether every coefficient lies in Q (checked, not assumed).
    pub is_rational: bool,
}

/// det(x₀I - U) at one integer sample point.
#[cfg(test)]
fn det_sample(op: &WalkOperator, x0: i64) -> QuadRat {
    ScaledMatrix::new(&op.matrix).char_value(x0)
}

/// Newton interpolation through (xs[i], values[i]); the abscissae must be
/// pairwise distinct. Returns the unique polynomial of degree < len.
fn newton_interpolate(xs: &[QuadRat], values: Vec<QuadRat>) -> Poly {
    let n = xs.len();
    let mut table = values;
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - level];
            table[i] = &num / &den;
        }
    }
    // Horner assembly of Σ table[i]·∏_{j<i}(x - x_j)
    let mut p = Poly::constant(table[n - 1].clone());
    for i in (0..n - 1).rev() {
        let linear = Poly::new(vec![-&xs[i], QuadRat::one()]);
        p = &(&p * &linear) + &Poly::constant(table[i].clone());
    }
    p
}

/// Expand Σⱼ g_j·x^(h-j)·(x²+1)ʲ, the inverse of core(x) = x^h·g(x + 1/x)
/// for a palindromic core of degree 2h.
fn unfold_palindromic(g: &Poly, h: usize) -> Poly {
    let mut coeffs = vec![QuadRat::zero(); 2 * h + 1];
    for j in 0..=g.degree() {
        let gj = g.coeff(j);
        if gj.is_zero() {
            continue;
        }
        for t in 0..=j {
            let b = QuadRat::from_rational(Rational::from(binomial(
                num_bigint::BigInt::from(j),
                num_bigint::BigInt::from(t),
            )));
            coeffs[h - j + 2 * t] += &(&gj * &b);
        }
    }
    Poly::new(coeffs)
}

/// Exact det(xI - U) for the full operator.
pub fn char_poly(op: &WalkOperator) -> CharPoly {
    let d = op.matrix.dim();
    let sm = ScaledMatrix::new(&op.matrix);
    // σ = f(0) = det(-U) = ±1 decides between the palindromic and
    // antipalindromic shapes of f.
    let sigma = sm.char_value(0);
    let sigma_plus = sigma == QuadRat::one();
    assert!(
        sigma_plus || sigma == QuadRat::from_int(-1),
        "constant term of a characteristic polynomial of an orthogonal matrix must be ±1"
    );
    // Forced roots at ±1: an antipalindromic f vanishes at 1 (and at -1 when
    // d is even); a palindromic f of odd degree vanishes at -1. Dividing
    // them out leaves a palindromic core of even degree 2h.
    let peel = match (sigma_plus, d % 2 == 0) {
        (true, true) => Poly::one(),
        (true, false) => Poly::from_ints(&[1, 1]),
        (false, true) => Poly::from_ints(&[-1, 0, 1]),
        (false, false) => Poly::from_ints(&[-1, 1]),
    };
    let h = (d - peel.degree()) / 2;
    // Sample x₀ where the peeled factor does not vanish; g(x₀ + 1/x₀) then
    // recovers the core from h+1 determinants instead of d+1.
    let x_start: i64 = if sigma_plus { 1 } else { 2 };
    let mut ys = Vec::with_capacity(h + 1);
    let mut gvals = Vec::with_capacity(h + 1);
    for x0 in x_start..=x_start + h as i64 {
        let f_val = sm.char_value(x0);
        let x = QuadRat::from_int(x0);
        let x_pow_h =
            QuadRat::from_rational(Rational::from(num_bigint::BigInt::from(x0)).pow(h as i32));
        let denom = &peel.eval(&x) * &x_pow_h;
        ys.push(&x + &x.inverse().expect("abscissa is nonzero"));
        gvals.push(&f_val / &denom);
    }
    let g = newton_interpolate(&ys, gvals);
    assert_eq!(g.degree(), h, "half-degree interpolant must have full degree");
    let poly = &unfold_palindromic(&g, h) * &peel;
    assert_eq!(poly.degree(), d, "characteristic polynomial must have full degree");
    assert!(poly.is_monic(), "characteristic polynomial must be monic");
    assert_eq!(poly.coeff(0), sigma);
    // One fresh sample past the interpolation window guards the whole
    // reconstruction, not just the g-samples.
    let probe = x_start + h as i64 + 1;
    assert_eq!(poly.eval(&QuadRat::from_int(probe)), sm.char_value(probe));
    let is_rational = poly.is_rational();
    CharPoly { spec: op.spec, poly, is_rational }
}

/// Evaluate the closed product formula for the spectrum at a complex point.
/// Only the three families with a printed formula are supported; the
/// flip-flop Grover formula is reproduced as printed even though it is known
/// to disagree with the exact spectrum (see `cross_check_factorization`).
pub fn product_formula_eval(spec: &WalkSpec, x: Complex64) -> Result<Complex64, SpectralError> {
    let n = spec.n as f64;
    let angle = |k: usize| 2.0 * std::f64::consts::PI * k as f64 / n;
    match (spec.family, spec.coin_type) {
        (CoinFamily::Hadamard, CoinType::F) => {
            let mut acc = Complex64::new(1.0, 0.0);
            for k in 0..spec.n {
                let c = std::f64::consts::SQRT_2 * angle(k).cos();
                acc *= x * x - c * x + 1.0;
            }
            Ok(acc)
        }
        (CoinFamily::Grover3, ct) => {
            let sign = match ct {
                CoinType::M => 1.0,
                CoinType::F => -1.0,
            };
            let mut acc = (x - 1.0).powu(spec.n as u32);
            for k in 0..spec.n {
                let c = sign * (2.0 / 3.0) * (2.0 + angle(k).cos());
                acc *= x * x + c * x + 1.0;
            }
            Ok(acc)
        }
        (CoinFamily::Hadamard, CoinType::M) => {
            Err(SpectralError::UnsupportedFamily { family: spec.family, coin_type: spec.coin_type })
        }
    }
}

/// Tolerance deciding whether the product formula and the exact polynomial
/// agree at the sampled points. Well clear of both the float noise of the
/// two evaluation routes (~1e-12) and the O(1) disagreement of a wrong
/// formula.
pub const CROSS_CHECK_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationCheck {
    pub spec: WalkSpec,
    pub num_samples: usize,
    pub max_rel_err: f64,
    pub consistent: bool,
}

/// Compare the exact characteristic polynomial against the closed product
/// formula at `num_samples` points on the circle |x| = 2, where neither side
/// vanishes (all roots lie on the unit circle).
pub fn cross_check_factorization(
    op: &WalkOperator,
    cp: &CharPoly,
    num_samples: usize,
) -> Result<FactorizationCheck, SpectralError> {
    assert!(num_samples > 0);
    let mut max_rel_err: f64 = 0.0;
    for j in 0..num_samples {
        let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / num_samples as f64;
        let x = Complex64::from_polar(2.0, theta);
        let exact = cp.poly.eval_complex(x);
        let formula = product_formula_eval(&op.spec, x)?;
        let rel = (exact - formula).norm() / exact.norm().max(formula.norm());
        max_rel_err = max_rel_err.max(rel);
    }
    Ok(FactorizationCheck {
        spec: op.spec,
        num_samples,
        max_rel_err,
        consistent: max_rel_err < CROSS_CHECK_REL_TOL,
    })
}
