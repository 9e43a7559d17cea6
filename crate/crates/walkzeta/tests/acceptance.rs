//! Acceptance gate: ten end-to-end criteria covering the period tables,
//! the frozen printed reference data, the product-formula cross-checks,
//! the Barnes numerics and the functional equations.
//!
//! Each criterion prints exactly one `criterion N: PASS/FAIL` line
//! (visible with `--nocapture`, and always shown on failure); every
//! tolerance is pinned as a named constant here, next to the check that
//! uses it.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use walkzeta::abszeta::{
    barnes_zeta, brute_force_barnes_zeta, epsilon_f, functional_eq_residual, log_multiple_gamma,
    multiple_sine, plan_absolute_zeta, z_f, z_f_mellin_oracle, zeta_f, BarnesEvalConfig,
};
use walkzeta::algebra::{cyclotomic, Poly, QuadRat};
use walkzeta::periodicity::{period, strip_cyclotomics, PeriodVerdict};
use walkzeta::report::printed;
use walkzeta::spectral::{char_poly, cross_check_factorization};
use walkzeta::walk::{build_operator, matrix_power_is_identity, CoinFamily, CoinType, WalkSpec};
use walkzeta::zeta::{automorphic_weight, zeta_of_walk};

/// Product formulas vs exact characteristic polynomials (criterion 5).
const FORMULA_REL_TOL: f64 = 1e-6;
/// Ladder recursion identity, residual relative to max(1, |value|) (6a).
const LADDER_TOL: f64 = 1e-9;
/// Ladder evaluator vs direct lattice summation (6b).
const LATTICE_TOL: f64 = 1e-8;
/// Rank-1 multiple gamma/sine vs classical gamma/sine (6c).
const RANK1_TOL: f64 = 1e-9;
/// Zeta and epsilon closed forms of the smallest flip-flop walk (7).
const CLOSED_FORM_TOL: f64 = 1e-8;
/// Barnes-series transform vs Mellin quadrature oracle (8).
const TRANSFORM_TOL: f64 = 1e-6;
/// Functional-equation residual on the strip grid (9).
const FUNCEQ_TOL: f64 = 1e-6;

/// Single-threaded period sweep budget, seconds (1).
const SWEEP_BUDGET: f64 = 300.0;
/// Exact power double-check budget, seconds (4).
const POWER_BUDGET: f64 = 60.0;

fn report(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} — {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn spec(family: CoinFamily, coin_type: CoinType, n: usize) -> WalkSpec {
    WalkSpec::new(family, coin_type, n).unwrap()
}

const ALL_FAMILIES: [(CoinFamily, CoinType); 4] = [
    (CoinFamily::Hadamard, CoinType::M),
    (CoinFamily::Hadamard, CoinType::F),
    (CoinFamily::Grover3, CoinType::M),
    (CoinFamily::Grover3, CoinType::F),
];

#[test]
fn criterion_01_period_tables_over_the_full_sweep() {
    let expected: BTreeMap<(CoinFamily, CoinType), BTreeMap<usize, u64>> = BTreeMap::from([
        ((CoinFamily::Hadamard, CoinType::M), BTreeMap::from([(2, 2), (4, 8), (8, 24)])),
        ((CoinFamily::Hadamard, CoinType::F), BTreeMap::from([(2, 8), (4, 8), (8, 24)])),
        ((CoinFamily::Grover3, CoinType::M), BTreeMap::from([(3, 6)])),
        ((CoinFamily::Grover3, CoinType::F), BTreeMap::from([(3, 4)])),
    ]);

    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (family, coin_type) in ALL_FAMILIES {
        let table = &expected[&(family, coin_type)];
        for n in 2..=64 {
            let verdict = period(&spec(family, coin_type, n)).verdict;
            let want = match table.get(&n) {
                Some(&t) => PeriodVerdict::Finite(t),
                None => PeriodVerdict::Infinite,
            };
            if verdict != want {
                mismatches.push(format!("{family:?}-{coin_type:?} N={n}: {verdict:?}, want {want:?}"));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        mismatches.is_empty() && elapsed < SWEEP_BUDGET,
        &format!(
            "4 families × N = 2..64 match the known period tables exactly; {} mismatches, \
             {elapsed:.1}s single-threaded (budget {SWEEP_BUDGET:.0}s)",
            mismatches.len()
        ),
    );
}

#[test]
fn criterion_02_printed_expansions_match_exactly() {
    let hf16 = char_poly(&build_operator(&spec(CoinFamily::Hadamard, CoinType::F, 16))).poly;
    let hm16 = char_poly(&build_operator(&spec(CoinFamily::Hadamard, CoinType::M, 16))).poly;
    let gm9 = char_poly(&build_operator(&spec(CoinFamily::Grover3, CoinType::M, 9))).poly;
    let gf9 = char_poly(&build_operator(&spec(CoinFamily::Grover3, CoinType::F, 9))).poly;

    let ratio = |num: i64, den: i64| QuadRat::new(walkzeta::algebra::rat(num, den), walkzeta::algebra::rat(0, 1));
    let hf16_ok = hf16 == printed::hadamard_f_16() && hf16.coeff(8) == ratio(901, 4);
    let gm9_ok = gm9 == printed::grover_m_9() && gm9.coeff(24) == ratio(-128, 9);
    let gf9_ok = gf9 == printed::grover_f_9() && gf9.coeff(24) == ratio(25, 9);
    // The printed moving-coin N = 16 list is arithmetically wrong; the
    // exact determinant is pinned separately and the difference is the
    // documented discrepancy.
    let hm16_ok = hm16 == printed::hadamard_m_16_exact() && hm16 != printed::hadamard_m_16_printed();

    report(
        2,
        hf16_ok && gm9_ok && gf9_ok && hm16_ok,
        "flip-flop Hadamard N=16 (incl. 901/4 x^8), Grover M/F N=9 (incl. -128/9 and 25/9) \
         match coefficient by coefficient; moving-coin Hadamard N=16 matches the pinned exact \
         list and differs from the printed one (WARN PAPER-HM16-EXP); the N=2 moving-coin \
         Grover display is excluded and its exact polynomial reported by `analyze`",
    );
}

#[test]
fn criterion_03_printed_zeta_forms_match_with_weights() {
    let mut ok = true;
    let mut weights = Vec::new();
    for (walk, form, c, d) in printed::zeta_forms() {
        let computed = zeta_of_walk(&walk).unwrap();
        let weight = automorphic_weight(&computed);
        ok &= computed == form && weight.c == c && weight.d == d;
        weights.push(d);
    }
    ok &= weights == vec![-4, -8, -16, -4, -8, -16, -9, -9];
    report(
        3,
        ok,
        "all 8 printed zeta product forms reproduced exactly; weights -4/-8/-16 (Hadamard M), \
         -4/-8/-16 (Hadamard F), -9/-9 (Grover3); the moving-coin Grover form carries the \
         documented ε = -1",
    );
}

#[test]
fn criterion_04_finite_periods_are_exactly_minimal() {
    let start = Instant::now();
    let mut ok = true;
    for (walk, t) in printed::finite_periods() {
        let op = build_operator(&walk);
        ok &= matrix_power_is_identity(&op, t);
        for div in 1..t {
            if t % div == 0 {
                ok &= !matrix_power_is_identity(&op, div);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        4,
        ok && elapsed < POWER_BUDGET,
        &format!(
            "exact U^T = I and U^t ≠ I for every proper divisor t, all 8 finite-period walks; \
             {elapsed:.1}s (budget {POWER_BUDGET:.0}s)"
        ),
    );
}

#[test]
fn criterion_05_product_formula_cross_checks() {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for n in 2..=16 {
        let op = build_operator(&spec(CoinFamily::Hadamard, CoinType::F, n));
        let check = cross_check_factorization(&op, &char_poly(&op), 100).unwrap();
        worst = worst.max(check.max_rel_err);
    }
    for n in 2..=12 {
        let op = build_operator(&spec(CoinFamily::Grover3, CoinType::M, n));
        let check = cross_check_factorization(&op, &char_poly(&op), 100).unwrap();
        worst = worst.max(check.max_rel_err);
    }
    ok &= worst < FORMULA_REL_TOL;

    // The printed flip-flop Grover formula must stay refuted by N = 3.
    let op = build_operator(&spec(CoinFamily::Grover3, CoinType::F, 3));
    let cp = char_poly(&op);
    let counterexample = cross_check_factorization(&op, &cp, 100).unwrap();
    let (shares, residual) = strip_cyclotomics(&cp.poly);
    ok &= !counterexample.consistent;
    ok &= shares == BTreeMap::from([(1, 2), (2, 3), (4, 4)]) && residual.is_constant();

    report(
        5,
        ok,
        &format!(
            "flip-flop Hadamard (N ≤ 16) and moving-coin Grover (N ≤ 12) formulas agree with \
             the exact characteristic polynomials at 100 sample points, max rel err {worst:.3e} \
             < {FORMULA_REL_TOL:.0e}; flip-flop Grover flagged WARN PAPER-GF-FACT with the N=3 \
             counterexample (exact Φ₁²Φ₂³Φ₄² vs formula Φ₁⁵Φ₆²)"
        ),
    );
}

/// Deterministic pseudo-random stream for the identity checks.
struct XorShift(u64);

impl XorShift {
    fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    /// Uniform in [0, 1).
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn criterion_06_barnes_numerics() {
    let cfg = BarnesEvalConfig::default();
    let mut rng = XorShift(0x9e3779b97f4a7c15);

    // (a) Recursion identity ζ_r(s, x) = ζ_{r-1}(s, x) + ζ_r(s, x + ω_r)
    // on random weights and arguments, ranks 2..4 (rank 1 is covered by
    // the closed forms below).  Both sides are evaluated independently, so
    // the achievable agreement is set by rounding amplification in the
    // continuation; drawing Re(s) from (-1.5, 0.5) keeps that
    // amplification inside the 1e-9 budget while still exercising the
    // continued region on every sample.
    let mut worst_a: f64 = 0.0;
    for rank in 2..=4usize {
        for _ in 0..6 {
            let omega: Vec<u64> = (0..rank).map(|_| 1 + rng.next_u64() % 8).collect();
            let x = 0.5 + 3.3 * rng.next_f64();
            // Below the poles {1, …, r} throughout.
            let s_re = -1.5 + 2.0 * rng.next_f64();
            for s in [Complex64::new(s_re, 0.0), Complex64::new(s_re, 1.1)] {
                let (head, last) = (&omega[..rank - 1], *omega.last().unwrap() as f64);
                let whole = barnes_zeta(&omega, x, s, &cfg).unwrap();
                let peeled = barnes_zeta(head, x, s, &cfg).unwrap()
                    + barnes_zeta(&omega, x + last, s, &cfg).unwrap();
                worst_a = worst_a.max((whole - peeled).norm() / whole.norm().max(1.0));
            }
        }
    }

    // (b) Ladder evaluator vs direct lattice summation, Re(s) = r + 1.5.
    let mut worst_b: f64 = 0.0;
    for (omega, x, s) in [
        (vec![8u64], 0.8, Complex64::new(2.5, 0.0)),
        (vec![2, 8], 1.0, Complex64::new(3.5, -0.6)),
        (vec![2, 2, 8], 2.4, Complex64::new(4.5, 0.0)),
        (vec![2, 2, 3, 3], 1.6, Complex64::new(5.5, 0.4)),
    ] {
        let ladder = barnes_zeta(&omega, x, s, &cfg).unwrap();
        let direct = brute_force_barnes_zeta(&omega, x, s, 1e-9);
        worst_b = worst_b.max((ladder - direct).norm() / direct.norm());
    }

    // (c) Rank-1 closed forms: Γ_1(x, ω) = (2π)^{-1/2} ω^{x/ω - 1/2} Γ(x/ω)
    // and S_1(x, ω) = 2 sin(πx/ω).
    let mut worst_c: f64 = 0.0;
    for (w, x) in [(1u64, 0.3), (2, 1.7), (5, 2.3), (8, 3.1)] {
        let wf = w as f64;
        let lg = log_multiple_gamma(&[w], x, &cfg).unwrap();
        let closed =
            ln_gamma(x / wf) - 0.5 * (2.0 * std::f64::consts::PI).ln() + (x / wf - 0.5) * wf.ln();
        worst_c = worst_c.max((lg - closed).abs());
        let sine = multiple_sine(&[w], x.min(wf * 0.9), &cfg).unwrap();
        let closed_sine = 2.0 * (std::f64::consts::PI * x.min(wf * 0.9) / wf).sin();
        worst_c = worst_c.max((sine - closed_sine).abs());
    }

    report(
        6,
        worst_a < LADDER_TOL && worst_b < LATTICE_TOL && worst_c < RANK1_TOL,
        &format!(
            "(a) recursion identity ranks 2..4 on random inputs, residual {worst_a:.3e} < \
             {LADDER_TOL:.0e}; (b) vs direct lattice sums at Re(s) = r + 1.5, rel err \
             {worst_b:.3e} < {LATTICE_TOL:.0e}; (c) rank-1 gamma/sine closed forms, err \
             {worst_c:.3e} < {RANK1_TOL:.0e}"
        ),
    );
}

#[test]
fn criterion_07_closed_forms_of_the_smallest_flip_flop_walk() {
    let cfg = BarnesEvalConfig::default();
    let plan =
        plan_absolute_zeta(&zeta_of_walk(&spec(CoinFamily::Hadamard, CoinType::F, 2)).unwrap());

    let mut worst_zeta: f64 = 0.0;
    for s in [-3.0, -2.0, -1.0, 1.0, 2.0] {
        let z = zeta_f(s, &plan, &cfg).unwrap();
        let closed = (ln_gamma((s + 4.0) / 8.0) - ln_gamma((s + 8.0) / 8.0)).exp() / 8.0f64.sqrt();
        worst_zeta = worst_zeta.max((z - closed).abs() / closed.abs());
    }

    let mut worst_eps: f64 = 0.0;
    for s in [-3.5, -2.5, -1.5, -0.5] {
        let e = epsilon_f(s, &plan, &cfg).unwrap();
        let closed = -1.0 / (s * std::f64::consts::PI / 8.0).tan();
        worst_eps = worst_eps.max((e - closed).abs() / closed.abs());
    }

    report(
        7,
        worst_zeta < CLOSED_FORM_TOL && worst_eps < CLOSED_FORM_TOL,
        &format!(
            "ζ_f vs Γ((s+4)/8)/Γ((s+8)/8)·8^(-1/2) at s ∈ {{-3,-2,-1,1,2}}, rel err \
             {worst_zeta:.3e}; ε_f vs -cot(sπ/8) at s ∈ {{-3.5,-2.5,-1.5,-0.5}}, rel err \
             {worst_eps:.3e}; both < {CLOSED_FORM_TOL:.0e}"
        ),
    );
}

#[test]
fn criterion_08_transform_agrees_with_the_mellin_oracle() {
    let cfg = BarnesEvalConfig::default();
    let mut worst: f64 = 0.0;
    for (family, coin_type, n, points) in [
        (CoinFamily::Hadamard, CoinType::F, 2, [(3.0, 10.0), (2.5, 8.0)]),
        (CoinFamily::Hadamard, CoinType::M, 4, [(4.0, 12.0), (3.5, 9.0)]),
        (CoinFamily::Grover3, CoinType::M, 3, [(5.0, 10.0), (4.5, 8.0)]),
        (CoinFamily::Grover3, CoinType::F, 3, [(4.0, 10.0), (3.5, 8.0)]),
    ] {
        let form = zeta_of_walk(&spec(family, coin_type, n)).unwrap();
        let plan = plan_absolute_zeta(&form);
        for (w, s) in points {
            let series =
                z_f(Complex64::new(w, 0.0), Complex64::new(s, 0.0), &plan, &cfg).unwrap();
            let integral = z_f_mellin_oracle(w, s, &form).unwrap();
            worst = worst.max((series.re - integral).abs() / integral.abs());
        }
    }
    report(
        8,
        worst < TRANSFORM_TOL,
        &format!(
            "Barnes-series Z_f vs Mellin quadrature at 2 (w, s) points for each of the four \
             pinned plans, max rel err {worst:.3e} < {TRANSFORM_TOL:.0e}"
        ),
    );
}

#[test]
fn criterion_09_functional_equations_on_the_strip_grid() {
    let cfg = BarnesEvalConfig::default();
    let mut worst: f64 = 0.0;
    let mut cs = Vec::new();
    for (walk, form, _, d) in printed::zeta_forms() {
        let plan = plan_absolute_zeta(&form);
        cs.push((walk.family, walk.coin_type, form.weight_c()));
        for k in 0..10 {
            let s = d as f64 + (k as f64 + 0.25) * (-d as f64) / 10.0;
            worst = worst.max(functional_eq_residual(s, &plan, &cfg).unwrap());
        }
    }
    let c_ok = cs.iter().all(|&(family, coin_type, c)| {
        if family == CoinFamily::Grover3 && coin_type == CoinType::M {
            c == -1
        } else {
            c == 1
        }
    });
    report(
        9,
        worst < FUNCEQ_TOL && c_ok,
        &format!(
            "ζ_f(D-s)^C = ε_f(s)ζ_f(s) on 10-point grids inside (D, 0) for all 8 plans, max \
             residual {worst:.3e} < {FUNCEQ_TOL:.0e}; C = +1 everywhere except the moving-coin \
             Grover plan with C = -1"
        ),
    );
}

#[test]
fn criterion_10_cyclotomic_suite() {
    // Totient sieve up to 200.
    let mut phi: Vec<usize> = (0..=200).collect();
    for p in 2..=200usize {
        if phi[p] == p {
            for m in (p..=200).step_by(p) {
                phi[m] -= phi[m] / p;
            }
        }
    }

    let mut ok = true;
    for n in 1..=200u64 {
        let mut product = Poly::one();
        for d in 1..=n {
            if n % d == 0 {
                product = &product * &cyclotomic(d);
            }
        }
        ok &= product == Poly::x_pow_minus_one(n as usize);
        ok &= cyclotomic(n).degree() == phi[n as usize];
    }
    ok &= cyclotomic(105).coeff(7) == QuadRat::from_int(-2);

    report(
        10,
        ok,
        "∏_{d|n} Φ_d = x^n - 1 exactly for n ≤ 200; deg Φ_n = φ(n) against a totient sieve; \
         the x⁷ coefficient of Φ₁₀₅ is -2",
    );
}
