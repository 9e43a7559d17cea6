//! Finite-period detection for walk operators.
//!
//! A real orthogonal walk operator U satisfies U^T = I for some T ≥ 1
//! exactly when every eigenvalue is a root of unity — that is, when its
//! characteristic polynomial is a product of cyclotomic polynomials (over
//! Q(√2) a cyclotomic may split into two conjugate halves, either of which
//! can occur alone). Stripping all cyclotomic content from det(xI − U)
//! therefore decides the period for any concrete walk: a nontrivial
//! residual certifies that no power of U is the identity, and otherwise the
//! period is the lcm of the orders that occurred.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{cyclotomic, cyclotomic_at, totient, Poly, QuadRat, Rational};
use crate::spectral::{char_poly, CharPoly};
use crate::walk::{build_operator, matrix_power_is_identity, WalkOperator, WalkSpec};

/// Outcome of the period decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodVerdict {
    /// U^T = I, and T is minimal.
    Finite(u64),
    /// No power of U is the identity.
    Infinite,
}

/// How the coefficients of a monic polynomial sit inside Q(√2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientRing {
    /// Every coefficient is a rational integer.
    #[serde(rename = "Z")]
    InZ,
    /// Rational coefficients, at least one of them not an integer. For a
    /// monic polynomial this rules out being a product of cyclotomics.
    #[serde(rename = "QnotZ")]
    InQNotZ,
    /// Some coefficient has a nonzero √2-part. Inconclusive on its own:
    /// x² − √2x + 1 has only roots of unity.
    #[serde(rename = "notQ")]
    NotInQ,
}

/// Classify the coefficient ring of a monic polynomial.
pub fn integer_coefficient_test(p: &Poly) -> CoefficientRing {
    assert!(p.is_monic());
    if !p.is_rational() {
        CoefficientRing::NotInQ
    } else if p.is_integer() {
        CoefficientRing::InZ
    } else {
        CoefficientRing::InQNotZ
    }
}

/// A period decision together with the evidence that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodResult {
    pub spec: WalkSpec,
    pub verdict: PeriodVerdict,
    /// n ↦ degree of the Φ_n-content divided out of the characteristic
    /// polynomial. Degrees rather than multiplicities, because over Q(√2)
    /// half of a cyclotomic can occur on its own; see [`Self::multiplicities`].
    pub cyclotomic_part: BTreeMap<u64, usize>,
    /// The cyclotomic-free cofactor; constant exactly when the verdict is
    /// Finite.
    pub residual: Poly,
    /// Monic with rational but not all integer coefficients — when true,
    /// an independent certificate that the period is infinite.
    pub rational_but_not_integer: bool,
}

impl PeriodResult {
    /// Whole multiplicities n ↦ m when every recorded share is a whole
    /// number of copies of Φ_n; None when some share is a strict part of
    /// its cyclotomic (possible only for orders divisible by 8).
    pub fn multiplicities(&self) -> Option<BTreeMap<u64, usize>> {
        let mut out = BTreeMap::new();
        for (&n, &share) in &self.cyclotomic_part {
            let phi = totient(n) as usize;
            if share % phi != 0 {
                return None;
            }
            out.insert(n, share / phi);
        }
        Some(out)
    }
}

/// All n ≥ 1 with φ(n) ≤ bound, from a totient sieve. φ(n) ≥ √(n/2) caps
/// the search at 2·bound².
fn candidate_orders(bound: usize) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    let limit = 2 * bound * bound;
    let mut phi: Vec<usize> = (0..=limit).collect();
    for i in 2..=limit {
        if phi[i] == i {
            // i is prime; apply the (1 - 1/i) factor to its multiples.
            for m in (i..=limit).step_by(i) {
                phi[m] -= phi[m] / i;
            }
        }
    }
    (1..=limit).filter(|&n| phi[n] <= bound).map(|n| n as u64).collect()
}

/// Denominator-clearing factor: lcm of all coefficient denominators.
fn denominator_lcm(p: &Poly) -> BigInt {
    let mut d = BigInt::one();
    for c in p.coeffs() {
        d = d.lcm(c.rat.denom()).lcm(c.irr.denom());
    }
    d
}

/// D²·N(p(2)) ∈ Z, where D clears the denominators of p and N is the field
/// norm of Q(√2). If a monic g with algebraic-integer coefficients divides
/// p, then g(2) divides D·p(2) in Z[√2] (Gauss's lemma; Z[√2] is a UFD),
/// so N(g(2)) divides this integer. Every nontrivial monic divisor of Φ_n
/// over Q(√2) — the full cyclotomic or one of its two conjugate halves —
/// has N(g(2)) divisible by Φ_n(2), giving a cheap necessary condition for
/// gcd(p, Φ_n) ≠ 1 that prunes almost every candidate order.
fn scaled_norm_at_two(p: &Poly) -> BigInt {
    let d = denominator_lcm(p);
    let scaled = p.eval(&QuadRat::from_int(2)).norm() * Rational::from(&d * &d);
    debug_assert!(scaled.is_integer());
    scaled.to_integer()
}

/// Remove every cyclotomic factor (over Q(√2)) from a monic polynomial.
/// Returns the map n ↦ divided-out degree and the cyclotomic-free residual.
pub fn strip_cyclotomics(p: &Poly) -> (BTreeMap<u64, usize>, Poly) {
    strip_cyclotomics_in_order(p, &candidate_orders(2 * p.degree()))
}

/// Stripping with a caller-chosen enumeration order of candidate n. The
/// result does not depend on the order (distinct cyclotomics are coprime,
/// and each order's content is removed exhaustively); this entry point
/// exists so tests can verify exactly that.
pub fn strip_cyclotomics_in_order(p: &Poly, orders: &[u64]) -> (BTreeMap<u64, usize>, Poly) {
    assert!(p.is_monic(), "input must be monic");
    assert!(p.degree() >= 1, "input must be nonconstant");
    let mut residual = p.clone();
    let mut shares: BTreeMap<u64, usize> = BTreeMap::new();
    let mut filter_key = scaled_norm_at_two(&residual);
    for &n in orders {
        // A divisor coming from Φ_n has degree ≥ φ(n)/2 over Q(√2), so
        // large orders cannot fit in what is left. Sound in any order.
        if residual.degree() == 0 || totient(n) as usize > 2 * residual.degree() {
            continue;
        }
        if !filter_key.is_zero() && !(&filter_key % cyclotomic_at(n, 2)).is_zero() {
            continue;
        }
        let phi_n = cyclotomic(n);
        let mut removed = 0usize;
        loop {
            if residual.is_rational() {
                // Φ_n is irreducible over Q, so divisibility is the whole
                // story and exact division is cheaper than a gcd.
                let (q, r) = residual.divmod(&phi_n).expect("nonzero divisor");
                if !r.is_zero() {
                    break;
                }
                residual = q;
                removed += phi_n.degree();
            } else {
                let g = residual.gcd(&phi_n);
                if g.degree() == 0 {
                    break;
                }
                residual = residual.div_exact(&g);
                removed += g.degree();
            }
        }
        if removed > 0 {
            *shares.entry(n).or_insert(0) += removed;
            filter_key = scaled_norm_at_two(&residual);
        }
    }
    let stripped: usize = shares.values().sum();
    assert_eq!(stripped + residual.degree(), p.degree(), "degree accounting");
    (shares, residual)
}

/// Exact U^T = I confirmations are run whenever the claimed period is at
/// most this, which covers every finite case the sweep can produce.
const POWER_CHECK_LIMIT: u64 = 10_000;

/// Decide the period of a walk exactly.
pub fn period(spec: &WalkSpec) -> PeriodResult {
    let op = build_operator(spec);
    let cp = char_poly(&op);
    period_of_char_poly(&op, &cp)
}

/// The period decision for an operator whose characteristic polynomial has
/// already been computed; `period` is this with the two inputs derived
/// from the spec.
pub fn period_of_char_poly(op: &WalkOperator, cp: &CharPoly) -> PeriodResult {
    let spec = &op.spec;
    let (cyclotomic_part, residual) = strip_cyclotomics(&cp.poly);
    let verdict = if residual.is_constant() {
        let t = cyclotomic_part.keys().fold(1u64, |acc, &n| acc.lcm(&n));
        PeriodVerdict::Finite(t)
    } else {
        PeriodVerdict::Infinite
    };
    let rational_but_not_integer =
        integer_coefficient_test(&cp.poly) == CoefficientRing::InQNotZ;
    // A monic rational polynomial with a non-integer coefficient cannot be
    // a product of cyclotomics, so the certificate and the stripping
    // verdict must agree.
    if rational_but_not_integer {
        assert_eq!(verdict, PeriodVerdict::Infinite);
    }
    if let PeriodVerdict::Finite(t) = verdict {
        if t <= POWER_CHECK_LIMIT {
            assert!(
                matrix_power_is_identity(op, t),
                "{spec:?}: claimed period {t} fails the exact power check"
            );
        }
    }
    PeriodResult {
        spec: *spec,
        verdict,
        cyclotomic_part,
        residual,
        rational_but_not_integer,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::walk::{CoinFamily, CoinType};

    fn spec(family: CoinFamily, coin_type: CoinType, n: usize) -> WalkSpec {
        WalkSpec::new(family, coin_type, n).unwrap()
    }

    fn charpoly_of(family: CoinFamily, coin_type: CoinType, n: usize) -> Poly {
        char_poly(&build_operator(&spec(family, coin_type, n))).poly
    }

    #[test]
    fn grover_moving_three_is_all_cyclotomic() {
        let p = charpoly_of(CoinFamily::Grover3, CoinType::M, 3);
        let (shares, residual) = strip_cyclotomics(&p);
        assert!(residual.is_constant());
        assert_eq!(shares, BTreeMap::from([(1, 3), (2, 2), (3, 4)]));
        // As whole copies: Φ₁³ · Φ₂² · Φ₃².
        let result = period(&spec(CoinFamily::Grover3, CoinType::M, 3));
        assert_eq!(result.multiplicities(), Some(BTreeMap::from([(1, 3), (2, 2), (3, 2)])));
        let rebuilt = &(&cyclotomic(1).pow(3) * &cyclotomic(2).pow(2)) * &cyclotomic(3).pow(2);
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn half_of_a_cyclotomic_over_the_quadratic_field() {
        // x² − √2x + 1 is half of Φ₈ = (x² − √2x + 1)(x² + √2x + 1).
        let half = Poly::new(vec![
            QuadRat::one(),
            QuadRat::new(rat(0, 1), rat(-1, 1)),
            QuadRat::one(),
        ]);
        let other = Poly::new(vec![
            QuadRat::one(),
            QuadRat::new(rat(0, 1), rat(1, 1)),
            QuadRat::one(),
        ]);
        assert_eq!(&half * &other, cyclotomic(8));
        let (shares, residual) = strip_cyclotomics(&half);
        assert_eq!(shares, BTreeMap::from([(8, 2)]));
        assert!(residual.is_constant());
        // Degree 2 is not a whole number of Φ₈ copies.
        let phi = totient(8) as usize;
        assert!(shares[&8] % phi != 0);
    }

    #[test]
    fn known_finite_periods() {
        let cases = [
            (CoinFamily::Hadamard, CoinType::M, 2, 2),
            (CoinFamily::Hadamard, CoinType::M, 4, 8),
            (CoinFamily::Hadamard, CoinType::M, 8, 24),
            (CoinFamily::Hadamard, CoinType::F, 2, 8),
            (CoinFamily::Hadamard, CoinType::F, 4, 8),
            (CoinFamily::Hadamard, CoinType::F, 8, 24),
            (CoinFamily::Grover3, CoinType::M, 3, 6),
            (CoinFamily::Grover3, CoinType::F, 3, 4),
        ];
        for (family, coin_type, n, t) in cases {
            let result = period(&spec(family, coin_type, n));
            assert_eq!(result.verdict, PeriodVerdict::Finite(t), "{}", result.spec);
            assert!(result.residual.is_constant());
            assert!(!result.rational_but_not_integer);
        }
    }

    #[test]
    fn infinite_for_the_other_small_sizes() {
        for (family, sizes) in [
            (CoinFamily::Hadamard, vec![3usize, 5, 6, 7, 10, 12, 16]),
            (CoinFamily::Grover3, vec![2, 4, 5, 6, 9]),
        ] {
            for coin_type in [CoinType::M, CoinType::F] {
                for &n in &sizes {
                    let result = period(&spec(family, coin_type, n));
                    assert_eq!(result.verdict, PeriodVerdict::Infinite, "{}", result.spec);
                    assert!(result.residual.degree() >= 1);
                }
            }
        }
    }

    #[test]
    fn non_integer_rational_certificate_appears_where_expected() {
        // 2·3 states with the diffusion coin: rational non-integer
        // coefficients, hence infinite period by the certificate alone.
        let result = period(&spec(CoinFamily::Grover3, CoinType::M, 2));
        assert!(result.rational_but_not_integer);
        assert_eq!(result.verdict, PeriodVerdict::Infinite);
        // A 16-cycle leaves a nonconstant residual and the same certificate.
        let result = period(&spec(CoinFamily::Hadamard, CoinType::F, 16));
        assert!(result.rational_but_not_integer);
        assert!(result.residual.degree() >= 1);
    }

    #[test]
    fn coefficient_ring_classification() {
        assert_eq!(
            integer_coefficient_test(&charpoly_of(CoinFamily::Grover3, CoinType::M, 2)),
            CoefficientRing::InQNotZ
        );
        assert_eq!(integer_coefficient_test(&cyclotomic(8)), CoefficientRing::InZ);
        let half = Poly::new(vec![
            QuadRat::one(),
            QuadRat::new(rat(0, 1), rat(-1, 1)),
            QuadRat::one(),
        ]);
        // Not rational, yet all roots are roots of unity: the classification
        // alone must not imply anything about the period.
        assert_eq!(integer_coefficient_test(&half), CoefficientRing::NotInQ);
        let (_, residual) = strip_cyclotomics(&half);
        assert!(residual.is_constant());
    }

    #[test]
    fn stripping_is_idempotent_on_the_residual() {
        for (family, coin_type, n) in [
            (CoinFamily::Hadamard, CoinType::F, 16),
            (CoinFamily::Hadamard, CoinType::F, 5),
            (CoinFamily::Grover3, CoinType::M, 4),
        ] {
            let p = charpoly_of(family, coin_type, n);
            let (_, residual) = strip_cyclotomics(&p);
            assert!(residual.degree() >= 1);
            let (again, same) = strip_cyclotomics(&residual);
            assert!(again.is_empty());
            assert_eq!(same, residual);
        }
    }

    #[test]
    fn reconstruction_from_whole_multiplicities() {
        for (family, coin_type, n) in [
            (CoinFamily::Hadamard, CoinType::M, 8),
            (CoinFamily::Hadamard, CoinType::F, 4),
            (CoinFamily::Grover3, CoinType::F, 3),
        ] {
            let result = period(&spec(family, coin_type, n));
            let mults = result.multiplicities().expect("whole copies");
            let mut rebuilt = result.residual.clone();
            for (&k, &m) in &mults {
                rebuilt = &rebuilt * &cyclotomic(k).pow(m);
            }
            assert_eq!(rebuilt, charpoly_of(family, coin_type, n), "{}", result.spec);
        }
    }

    #[test]
    fn verdict_is_order_invariant() {
        for (family, coin_type, n) in [
            (CoinFamily::Hadamard, CoinType::M, 4),
            (CoinFamily::Hadamard, CoinType::F, 5),
            (CoinFamily::Grover3, CoinType::F, 3),
        ] {
            let p = charpoly_of(family, coin_type, n);
            let orders = candidate_orders(2 * p.degree());
            let baseline = strip_cyclotomics_in_order(&p, &orders);
            let mut reversed = orders.clone();
            reversed.reverse();
            assert_eq!(strip_cyclotomics_in_order(&p, &reversed), baseline);
            let mut rotated = orders.clone();
            rotated.rotate_left(orders.len() / 3);
            assert_eq!(strip_cyclotomics_in_order(&p, &rotated), baseline);
        }
    }

    #[test]
    fn candidate_orders_cover_exactly_the_totient_bound() {
        let orders = candidate_orders(4);
        // φ(n) ≤ 4: n ∈ {1,2,3,4,5,6,8,10,12}.
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
        assert!(candidate_orders(0).is_empty());
    }

    #[test]
    fn finite_periods_fail_on_proper_divisors() {
        let cases = [
            (CoinFamily::Hadamard, CoinType::F, 2usize, 8u64),
            (CoinFamily::Grover3, CoinType::M, 3, 6),
        ];
        for (family, coin_type, n, t) in cases {
            let op = build_operator(&spec(family, coin_type, n));
            assert!(matrix_power_is_identity(&op, t));
            for d in 1..t {
                if t % d == 0 {
                    assert!(!matrix_power_is_identity(&op, d), "U^{d} should not be I");
                }
            }
        }
    }
}
