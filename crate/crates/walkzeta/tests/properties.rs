//! Randomized algebraic invariants: field axioms of the quadratic
//! extension, polynomial division, cyclotomic content recovery, product
//! form expansion, and exact walk evolution.

use std::collections::BTreeMap;

use proptest::prelude::*;

use walkzeta::algebra::{rat, totient, Poly, QuadRat};
use walkzeta::periodicity::strip_cyclotomics;
use walkzeta::spectral::char_poly;
use walkzeta::walk::{build_operator, evolve_state, CoinFamily, CoinType, WalkSpec};
use walkzeta::zeta::{to_product_form, ZetaProductForm};

fn quadrat() -> impl Strategy<Value = QuadRat> {
    (-40i64..=40, 1i64..=9, -40i64..=40, 1i64..=9)
        .prop_map(|(a, b, c, d)| QuadRat::new(rat(a, b), rat(c, d)))
}

fn nonzero_quadrat() -> impl Strategy<Value = QuadRat> {
    quadrat().prop_filter("nonzero", |q| !q.is_zero())
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(quadrat(), 1..=max_len).prop_map(Poly::new)
}

fn any_spec(max_n: usize) -> impl Strategy<Value = WalkSpec> {
    (
        prop_oneof![Just(CoinFamily::Hadamard), Just(CoinFamily::Grover3)],
        prop_oneof![Just(CoinType::M), Just(CoinType::F)],
        2..=max_n,
    )
        .prop_map(|(family, coin_type, n)| WalkSpec::new(family, coin_type, n).unwrap())
}

proptest! {
    #[test]
    fn multiplying_by_the_inverse_gives_one(q in nonzero_quadrat()) {
        let inv = q.inverse().unwrap();
        prop_assert!((&q * &inv).is_one());
    }

    #[test]
    fn conjugation_distributes_over_products(a in quadrat(), b in quadrat()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.conj(), &a.conj() * &b.conj());
        prop_assert_eq!(ab.norm(), a.norm() * b.norm());
    }

    #[test]
    fn display_strings_parse_back_to_the_same_value(q in quadrat()) {
        prop_assert_eq!(q.to_string().parse::<QuadRat>().unwrap(), q);
    }

    #[test]
    fn polynomial_division_round_trips(a in poly(9), b in poly(5)) {
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planted_cyclotomic_content_is_recovered(
        orders in proptest::collection::btree_map(1u64..=12, 1usize..=2, 1..=3),
        cofactor_power in 0usize..=1,
    ) {
        use walkzeta::algebra::cyclotomic;
        // Monic, cyclotomic-free cofactor: x^2 - 3 has no roots of unity.
        let cofactor = Poly::from_ints(&[-3, 0, 1]).pow(cofactor_power);
        let mut planted = cofactor.clone();
        for (&n, &mult) in &orders {
            planted = &planted * &cyclotomic(n).pow(mult);
        }
        let (shares, residual) = strip_cyclotomics(&planted);
        let expected: BTreeMap<u64, usize> =
            orders.iter().map(|(&n, &mult)| (n, mult * totient(n) as usize)).collect();
        prop_assert_eq!(shares, expected);
        prop_assert_eq!(residual, cofactor);
    }

    // `to_product_form` recovers sign and orders from any expanded
    // denominator-free form; its domain is polynomials with unit constant
    // term, so the x^(l/2) prefactor stays zero here as it does for every
    // reciprocal characteristic polynomial.
    #[test]
    fn product_forms_round_trip_through_expansion(
        sign in prop_oneof![Just(1i8), Just(-1i8)],
        mut numer in proptest::collection::vec(1u64..=8, 1..=4),
    ) {
        numer.sort_unstable();
        let form = ZetaProductForm { sign, l: 0, numer_exps: numer, denom_exps: Vec::new() };
        let (num, den) = form.expand();
        prop_assert_eq!(den, Poly::one());
        prop_assert_eq!(to_product_form(&num).unwrap(), form);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn walk_characteristic_polynomials_are_monic_palindromes(spec in any_spec(6)) {
        let cp = char_poly(&build_operator(&spec));
        prop_assert!(cp.poly.is_monic());
        prop_assert_eq!(cp.poly.degree(), spec.dim());
        // det U = ±1 forces x^d f(1/x) = ±f(x).
        let mirrored = cp.poly.reversed();
        prop_assert!(mirrored == cp.poly || mirrored == -(&cp.poly));
    }

    #[test]
    fn evolution_is_additive_in_the_step_count(
        spec in any_spec(4),
        seed in proptest::collection::vec(-5i64..=5, 24),
        t1 in 0u64..=6,
        t2 in 0u64..=6,
    ) {
        let op = build_operator(&spec);
        let state: Vec<QuadRat> = (0..spec.dim())
            .map(|i| QuadRat::new(rat(seed[i % seed.len()], 1), rat(seed[(i + 7) % seed.len()], 2)))
            .collect();
        let two_leg = evolve_state(&op, &evolve_state(&op, &state, t1).unwrap(), t2).unwrap();
        let one_leg = evolve_state(&op, &state, t1 + t2).unwrap();
        prop_assert_eq!(two_leg, one_leg);
    }
}
