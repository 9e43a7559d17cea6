use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraError, Rational};

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Element of Q(√2), stored as `rat + irr·√2` with both parts canonical
/// rationals. Equality of the pair is equality in the field because √2 is
/// irrational.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadRat {
    pub rat: Rational,
    pub irr: Rational,
}

impl QuadRat {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        QuadRat { rat, irr }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QuadRat { rat, irr: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        QuadRat { rat: Rational::zero(), irr: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.irr.is_zero() && self.rat.is_one()
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Galois conjugate a + b√2 ↦ a - b√2.
    pub fn conj(&self) -> Self {
        QuadRat { rat: self.rat.clone(), irr: -self.irr.clone() }
    }

    /// Field norm N(a + b√2) = a² - 2b², the product with the conjugate.
    /// Zero exactly on the zero element.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from_integer(2.into()) * &self.irr * &self.irr
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadRat { rat: &self.rat / &n, irr: -(&self.irr / &n) })
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap() + self.irr.to_f64().unwrap() * SQRT2
    }

    /// a -= b·c without intermediate clones of the zero components; this is
    /// the inner operation of the determinant elimination.
    pub fn sub_mul_assign(&mut self, b: &QuadRat, c: &QuadRat) {
        let b_rat = !b.rat.is_zero();
        let b_irr = !b.irr.is_zero();
        let c_rat = !c.rat.is_zero();
        let c_irr = !c.irr.is_zero();
        if b_rat && c_rat {
            self.rat -= &b.rat * &c.rat;
        }
        if b_irr && c_irr {
            self.rat -= Rational::from_integer(2.into()) * &b.irr * &c.irr;
        }
        if b_rat && c_irr {
            self.irr -= &b.rat * &c.irr;
        }
        if b_irr && c_rat {
            self.irr -= &b.irr * &c.rat;
        }
    }
}

impl Add for QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: QuadRat) -> QuadRat {
        QuadRat { rat: self.rat + rhs.rat, irr: self.irr + rhs.irr }
    }
}

impl Add<&QuadRat> for &QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat { rat: &self.rat + &rhs.rat, irr: &self.irr + &rhs.irr }
    }
}

impl AddAssign<&QuadRat> for QuadRat {
    fn add_assign(&mut self, rhs: &QuadRat) {
        if !rhs.rat.is_zero() {
            self.rat += &rhs.rat;
        }
        if !rhs.irr.is_zero() {
            self.irr += &rhs.irr;
        }
    }
}

impl Sub for QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: QuadRat) -> QuadRat {
        QuadRat { rat: self.rat - rhs.rat, irr: self.irr - rhs.irr }
    }
}

impl Sub<&QuadRat> for &QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat { rat: &self.rat - &rhs.rat, irr: &self.irr - &rhs.irr }
    }
}

impl SubAssign<&QuadRat> for QuadRat {
    fn sub_assign(&mut self, rhs: &QuadRat) {
        if !rhs.rat.is_zero() {
            self.rat -= &rhs.rat;
        }
        if !rhs.irr.is_zero() {
            self.irr -= &rhs.irr;
        }
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { rat: -self.rat, irr: -self.irr }
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { rat: -self.rat.clone(), irr: -self.irr.clone() }
    }
}

impl Mul for QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: QuadRat) -> QuadRat {
        (&self).mul(&rhs)
    }
}

impl Mul<&QuadRat> for &QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2, skipping the
        // component products that are structurally zero.
        let a = !self.rat.is_zero();
        let b = !self.irr.is_zero();
        let c = !rhs.rat.is_zero();
        let d = !rhs.irr.is_zero();
        let mut rat = Rational::zero();
        let mut irr = Rational::zero();
        if a && c {
            rat = &self.rat * &rhs.rat;
        }
        if b && d {
            rat += Rational::from_integer(2.into()) * &self.irr * &rhs.irr;
        }
        if a && d {
            irr = &self.rat * &rhs.irr;
        }
        if b && c {
            irr += &self.irr * &rhs.rat;
        }
        QuadRat { rat, irr }
    }
}

impl Div<&QuadRat> for &QuadRat {
    type Output = QuadRat;
    fn div(self, rhs: &QuadRat) -> QuadRat {
        self.mul(&rhs.inverse().expect("division by zero in Q(\u{221a}2)"))
    }
}

fn rational_str(r: &Rational) -> String {
    r.to_string()
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", rational_str(&self.rat));
        }
        let irr_mag = self.irr.clone().abs();
        let irr_part = if irr_mag.is_one() {
            "\u{221a}2".to_string()
        } else {
            format!("{}\u{221a}2", rational_str(&irr_mag))
        };
        if self.rat.is_zero() {
            let sign = if self.irr < Rational::zero() { "-" } else { "" };
            write!(f, "{sign}{irr_part}")
        } else {
            let sign = if self.irr < Rational::zero() { "-" } else { "+" };
            write!(f, "{}{sign}{irr_part}", rational_str(&self.rat))
        }
    }
}

impl fmt::Debug for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QuadRat {
    type Err = String;

    /// Inverse of `Display`: accepts "p/q", "p/q+r/s√2", "√2", "-3√2", ….
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parse_rat =
            |t: &str| Rational::from_str(t).map_err(|e| format!("bad rational {t:?}: {e}"));
        match s.strip_suffix("\u{221a}2") {
            None => Ok(QuadRat::from_rational(parse_rat(s)?)),
            Some(head) => {
                // Split the leading rational part from the √2 coefficient at
                // the last sign that is not the coefficient's own leading sign.
                let bytes = head.as_bytes();
                let mut split = None;
                for i in (1..bytes.len()).rev() {
                    if (bytes[i] == b'+' || bytes[i] == b'-')
                        && bytes[i - 1].is_ascii_digit()
                    {
                        split = Some(i);
                        break;
                    }
                }
                let (rat_s, irr_s) = match split {
                    Some(i) => (&head[..i], &head[i..]),
                    None => ("0", head),
                };
                let irr = match irr_s {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    t => parse_rat(t)?,
                };
                Ok(QuadRat::new(parse_rat(rat_s)?, irr))
            }
        }
    }
}

impl Serialize for QuadRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
