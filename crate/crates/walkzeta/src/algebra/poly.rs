use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraError, QuadRat, Rational};

/// Dense univariate polynomial over Q(√2). Coefficients are stored from the
/// constant term upward and the representation never carries trailing zeros,
/// so equal polynomials compare equal structurally. The zero polynomial is an
/// empty coefficient list.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<QuadRat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QuadRat>) -> Self {
        while coeffs.last().is_some_and(QuadRat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(QuadRat::one())
    }

    pub fn constant(c: QuadRat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::new(vec![QuadRat::zero(), QuadRat::one()])
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![QuadRat::zero(); n + 1];
        coeffs[0] = QuadRat::from_int(-1);
        coeffs[n] = QuadRat::one();
        Poly::new(coeffs)
    }

    /// Polynomial from integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| QuadRat::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that constants (including zero) have
    /// degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[QuadRat] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> QuadRat {
        self.coeffs.get(k).cloned().unwrap_or_else(QuadRat::zero)
    }

    pub fn leading(&self) -> QuadRat {
        self.coeffs.last().cloned().unwrap_or_else(QuadRat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(QuadRat::is_one)
    }

    /// True when every coefficient lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(QuadRat::is_rational)
    }

    /// True when every coefficient is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_rational() && c.rat.is_integer())
    }

    /// Coefficient-wise Galois conjugate.
    pub fn conj(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(QuadRat::conj).collect() }
    }

    pub fn scale(&self, c: &QuadRat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.leading().inverse().expect("nonzero leading coefficient"))
    }

    /// Horner evaluation at an exact point.
    pub fn eval(&self, x: &QuadRat) -> QuadRat {
        let mut acc = QuadRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation at a complex point, coefficients rounded to f64.
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    /// Exact Euclidean division: `self = q·div + r` with
    /// `deg r < deg div` or `r = 0`. Errors only on a zero divisor.
    pub fn divmod(&self, div: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        if div.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() || self.degree() < div.degree() {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = div.leading().inverse()?;
        let dd = div.degree();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![QuadRat::zero(); self.degree() - dd + 1];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            rem[k] = QuadRat::zero();
            for (j, d) in div.coeffs.iter().take(dd).enumerate() {
                if !d.is_zero() {
                    rem[k - dd + j].sub_mul_assign(&q, d);
                }
            }
            quo[k - dd] = q;
        }
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.divmod(div).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // Renormalising each remainder keeps the rational coefficients
            // from compounding across steps.
            let r = a.divmod(&b).expect("b nonzero").1.monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient reversal x^deg · p(1/x).
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(QuadRat::zero);
            if let Some(r) = rhs.coeffs.get(k) {
                c += r;
            }
            coeffs.push(c);
        }
        Poly::new(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(QuadRat::zero);
            if let Some(r) = rhs.coeffs.get(k) {
                c -= r;
            }
            coeffs.push(c);
        }
        Poly::new(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![QuadRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Poly {
    /// Human-readable descending form, e.g. `x^4 - 8x^2 + 901/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if !c.is_rational() {
                // mixed terms keep their full bracketed form
                (if first { "" } else { " + " }, format!("({c})"))
            } else if c.rat < Rational::zero() {
                (if first { "-" } else { " - " }, (-c).to_string())
            } else {
                (if first { "" } else { " + " }, c.to_string())
            };
            let shown_mag = if mag == "1" && k > 0 { String::new() } else { mag };
            match k {
                0 => write!(f, "{sign}{}", if shown_mag.is_empty() { "1" } else { &shown_mag })?,
                1 => write!(f, "{sign}{shown_mag}x")?,
                _ => write!(f, "{sign}{shown_mag}x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        (&self).add(&rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        (&self).mul(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn divmod_x8_minus_one_by_x4_minus_one() {
        let (q, r) = Poly::x_pow_minus_one(8)
            .divmod(&Poly::x_pow_minus_one(4))
            .unwrap();
        assert_eq!(q, Poly::from_ints(&[1, 0, 0, 0, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_with_remainder() {
        // (x² + 1) ÷ (x - 1) = (x + 1, 2)
        let (q, r) = Poly::from_ints(&[1, 0, 1])
            .divmod(&Poly::from_ints(&[-1, 1]))
            .unwrap();
        assert_eq!(q, Poly::from_ints(&[1, 1]));
        assert_eq!(r, Poly::from_ints(&[2]));
    }

    #[test]
    fn divmod_phi8_by_phi4() {
        // x⁴ + 1 = (x² + 1)(x² - 1) + 2, worked out by long division.
        let (q, r) = Poly::from_ints(&[1, 0, 0, 0, 1])
            .divmod(&Poly::from_ints(&[1, 0, 1]))
            .unwrap();
        assert_eq!(q, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(r, Poly::from_ints(&[2]));
    }

    #[test]
    fn divmod_by_zero_fails() {
        assert_eq!(
            Poly::x().divmod(&Poly::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_of_unity_polynomials() {
        // gcd(x⁴-1, x⁶-1) = x² - 1
        let g = Poly::x_pow_minus_one(4).gcd(&Poly::x_pow_minus_one(6));
        assert_eq!(g, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_with_constant_is_one() {
        let g = Poly::from_ints(&[3, 0, 5]).gcd(&Poly::from_ints(&[7]));
        assert_eq!(g, Poly::one());
    }

    #[test]
    fn gcd_finds_irrational_common_factor() {
        // x² - √2x + 1 divides x⁴ + 1: its conjugate factor is x² + √2x + 1.
        let h = Poly::new(vec![
            QuadRat::one(),
            QuadRat::new(rat(0, 1), rat(-1, 1)),
            QuadRat::one(),
        ]);
        let h_conj = h.conj();
        let phi8 = &h * &h_conj;
        assert_eq!(phi8, Poly::from_ints(&[1, 0, 0, 0, 1]));
        assert_eq!(phi8.gcd(&h), h.monic());
    }

    #[test]
    fn eval_complex_at_unit_roots() {
        let x = Complex64::new(0.0, 1.0);
        assert!(Poly::from_ints(&[1, 0, 1]).eval_complex(x).norm() < 1e-12);
        let e8 = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        assert!(Poly::from_ints(&[1, 0, 0, 0, 1]).eval_complex(e8).norm() < 1e-12);
    }

    #[test]
    fn eval_irrational_at_float_approximation() {
        // x - √2 at 1.41421356237 is within 1e-9 of zero.
        let p = Poly::new(vec![-QuadRat::sqrt2(), QuadRat::one()]);
        let v = p.eval_complex(Complex64::new(1.41421356237, 0.0));
        assert!(v.norm() < 1e-9);
    }

    #[test]
    fn display_descending_with_rational_coeffs() {
        let p = Poly::new(vec![
            QuadRat::new(rat(901, 4), rat(0, 1)),
            QuadRat::zero(),
            QuadRat::from_int(-8),
            QuadRat::one(),
        ]);
        assert_eq!(p.to_string(), "x^3 - 8x^2 + 901/4");
    }

    #[test]
    fn reversal_of_palindrome_is_identity() {
        let p = Poly::from_ints(&[1, 0, 0, 0, 1]);
        assert_eq!(p.reversed(), p);
    }
}
