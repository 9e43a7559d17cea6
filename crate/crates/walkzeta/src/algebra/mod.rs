//! Exact arithmetic: rationals, the quadratic field Q(√2), dense univariate
//! polynomials over it, and cyclotomic polynomials.

mod cyclotomic;
mod poly;
mod quadrat;

pub use cyclotomic::{cyclotomic, cyclotomic_at, divisors, totient};
pub use poly::Poly;
pub use quadrat::QuadRat;

/// Arbitrary-precision rational in canonical form (reduced, positive
/// denominator). `num_rational::BigRational` already maintains exactly that
/// invariant, so it is used directly.
pub type Rational = num_rational::BigRational;

use num_bigint::BigInt;

/// Shorthand for a rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
}
