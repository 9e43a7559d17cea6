//! Cyclotomic polynomials by recursive exact division:
//! Φ_n = (x^n - 1) / ∏_{d|n, d<n} Φ_d, with Φ_1 = x - 1.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use super::Poly;

fn cache() -> &'static Mutex<HashMap<u64, Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Φ_n for n ≥ 1. Results are integer polynomials of degree φ(n); computed
/// once and cached process-wide.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = Poly::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d < n {
            p = p.div_exact(&cyclotomic(d));
        }
    }
    cache().lock().unwrap().insert(n, p.clone());
    p
}

/// Φ_n evaluated at an integer point t > 1 without expanding coefficients,
/// via Φ_n(t) = ∏_{d|n} (t^d - 1)^{μ(n/d)}. Used as a cheap divisibility
/// filter before any exact polynomial work.
pub fn cyclotomic_at(n: u64, t: u64) -> BigInt {
    assert!(n >= 1 && t >= 2);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors(n) {
        match moebius(n / d) {
            1 => num *= BigInt::from(t).pow(d as u32) - 1,
            -1 => den *= BigInt::from(t).pow(d as u32) - 1,
            _ => {}
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(r == BigInt::from(0));
    q
}

/// Prime factorisation by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Euler totient from the factorisation.
pub fn totient(n: u64) -> u64 {
    let mut t = n;
    for (p, _) in factorize(n) {
        t = t / p * (p - 1);
    }
    t
}

fn moebius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_traits::ToPrimitive;

    #[test]
    fn first_orders_match_known_forms() {
        assert_eq!(cyclotomic(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(3), Poly::from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), Poly::from_ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    /// Independent construction: multiply (x - ζ) over the primitive n-th
    /// roots numerically and round each coefficient to the nearest integer.
    /// Rounding is justified because the true coefficients are integers and
    /// the accumulated float error stays far below 1/2.
    fn product_over_primitive_roots(n: u64) -> Vec<i64> {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)]; // ascending powers
        for k in 1..=n {
            if num_integer::Integer::gcd(&k, &n) != 1 {
                continue;
            }
            let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            let mut next = vec![Complex64::ZERO; coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= root * c;
            }
            coeffs = next;
        }
        coeffs
            .iter()
            .map(|c| {
                let rounded = c.re.round();
                assert!(c.im.abs() < 0.1 && (c.re - rounded).abs() < 0.1);
                rounded as i64
            })
            .collect()
    }

    #[test]
    fn matches_complex_root_product_for_small_orders() {
        for n in [1u64, 2, 3, 4, 5, 6, 8, 10, 12, 15, 16, 24, 30] {
            let expected = product_over_primitive_roots(n);
            let got: Vec<i64> = cyclotomic(n)
                .coeffs()
                .iter()
                .map(|c| c.rat.to_integer().to_i64().unwrap())
                .collect();
            assert_eq!(got, expected, "order {n}");
        }
    }

    #[test]
    fn order_105_has_coefficient_minus_two() {
        // The first order whose cyclotomic polynomial has a coefficient
        // outside {-1, 0, 1}; the x^7 coefficient is -2.
        let p = cyclotomic(105);
        assert_eq!(p.degree(), 48);
        assert_eq!(p.coeff(7), crate::algebra::QuadRat::from_int(-2));
        let oracle = product_over_primitive_roots(105);
        assert_eq!(oracle[7], -2);
    }

    #[test]
    fn degree_is_totient_counted_by_gcd() {
        for n in 1..=60u64 {
            let by_gcd = (1..=n)
                .filter(|k| num_integer::Integer::gcd(k, &n) == 1)
                .count() as u64;
            assert_eq!(totient(n), by_gcd, "totient({n})");
            assert_eq!(cyclotomic(n).degree() as u64, by_gcd, "deg Φ_{n}");
        }
    }

    #[test]
    fn divisor_products_reconstruct_x_n_minus_one() {
        for n in [1u64, 2, 6, 12, 30, 36] {
            let mut prod = Poly::one();
            for d in divisors(n) {
                prod = &prod * &cyclotomic(d);
            }
            assert_eq!(prod, Poly::x_pow_minus_one(n as usize));
        }
    }

    #[test]
    fn point_evaluation_matches_expanded_polynomial() {
        for n in [1u64, 2, 3, 4, 6, 8, 12, 15, 105] {
            let direct = cyclotomic(n).eval(&crate::algebra::QuadRat::from_int(2));
            assert_eq!(direct.rat.to_integer(), cyclotomic_at(n, 2));
        }
    }

    #[test]
    fn divisors_of_twelve() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
