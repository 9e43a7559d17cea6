//! Verification suites bundling the cross-checks between exact
//! computation, closed formulas, independent numerical oracles and the
//! frozen printed reference data.
//!
//! Every check produces a [`CheckLine`]; the three documented
//! discrepancies surface as Warn lines carrying their stable identifiers,
//! and a suite passes exactly when no line is Fail. A pinned discrepancy
//! that unexpectedly *vanishes* is a Fail: the suites verify the
//! documentation, not just the mathematics.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::abszeta::{
    barnes_zeta, brute_force_barnes_zeta, epsilon_f, functional_eq_residual, log_multiple_gamma,
    multiple_sine, plan_absolute_zeta, z_f, z_f_mellin_oracle, zeta_f, BarnesEvalConfig,
};
use crate::periodicity::strip_cyclotomics;
use crate::report::{printed, warn_ids, CheckLine, VerifyReport};
use crate::spectral::{char_poly, cross_check_factorization, CharPoly};
use crate::walk::{build_operator, CoinFamily, CoinType, WalkSpec};
use crate::zeta::{automorphic_weight, zeta_of_walk};

/// The suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &["factorizations", "zetas", "absolute", "functional-eq", "all"];

/// Run one verification suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<VerifyReport> {
    match name {
        "factorizations" => Some(suite_factorizations()),
        "zetas" => Some(suite_zetas()),
        "absolute" => Some(suite_absolute()),
        "functional-eq" => Some(suite_functional_eq()),
        "all" => {
            let mut checks = Vec::new();
            checks.extend(suite_factorizations().checks);
            checks.extend(suite_zetas().checks);
            checks.extend(suite_absolute().checks);
            checks.extend(suite_functional_eq().checks);
            Some(VerifyReport::new("all", checks))
        }
        _ => None,
    }
}

fn spec(family: CoinFamily, coin_type: CoinType, n: usize) -> WalkSpec {
    WalkSpec::new(family, coin_type, n).unwrap()
}

fn charpoly_of(family: CoinFamily, coin_type: CoinType, n: usize) -> CharPoly {
    char_poly(&build_operator(&spec(family, coin_type, n)))
}

/// Number of sample points for every product-formula cross-check.
const FORMULA_SAMPLES: usize = 100;

/// Product formulas vs exact characteristic polynomials, and the printed
/// expansions vs the exact determinants.
pub fn suite_factorizations() -> VerifyReport {
    let mut checks = Vec::new();

    // Flip-flop Hadamard product formula over the whole verified range.
    let mut worst: f64 = 0.0;
    let mut all_consistent = true;
    for n in 2..=16 {
        let op = build_operator(&spec(CoinFamily::Hadamard, CoinType::F, n));
        let cp = char_poly(&op);
        let check = cross_check_factorization(&op, &cp, FORMULA_SAMPLES).unwrap();
        worst = worst.max(check.max_rel_err);
        all_consistent &= check.consistent;
    }
    checks.push(CheckLine::check(
        "flip-flop Hadamard product formula, N = 2..16",
        all_consistent,
        format!("max relative error {worst:.3e} at {FORMULA_SAMPLES} sample points per size"),
    ));

    // Moving-coin Grover product formula.
    let mut worst: f64 = 0.0;
    let mut all_consistent = true;
    for n in 2..=12 {
        let op = build_operator(&spec(CoinFamily::Grover3, CoinType::M, n));
        let cp = char_poly(&op);
        let check = cross_check_factorization(&op, &cp, FORMULA_SAMPLES).unwrap();
        worst = worst.max(check.max_rel_err);
        all_consistent &= check.consistent;
    }
    checks.push(CheckLine::check(
        "moving-coin Grover product formula, N = 2..12",
        all_consistent,
        format!("max relative error {worst:.3e} at {FORMULA_SAMPLES} sample points per size"),
    ));

    // Flip-flop Grover: the printed formula is wrong, and stays wrong.
    let op = build_operator(&spec(CoinFamily::Grover3, CoinType::F, 3));
    let cp = char_poly(&op);
    let check = cross_check_factorization(&op, &cp, FORMULA_SAMPLES).unwrap();
    let (shares, residual) = strip_cyclotomics(&cp.poly);
    let exact_shares = shares == std::collections::BTreeMap::from([(1, 2), (2, 3), (4, 4)]);
    if !check.consistent && exact_shares && residual.is_constant() {
        checks.push(CheckLine::warn(
            "flip-flop Grover printed formula, N = 3",
            format!(
                "printed formula evaluates to Φ₁⁵Φ₆² but the exact characteristic \
                 polynomial is Φ₁²Φ₂³Φ₄² (relative disagreement {:.3e})",
                check.max_rel_err
            ),
            &[warn_ids::GROVER_F_FACTORIZATION],
        ));
    } else {
        checks.push(CheckLine::fail(
            "flip-flop Grover printed formula, N = 3",
            format!(
                "the pinned discrepancy changed shape: consistent = {}, exact shares = {:?}",
                check.consistent, shares
            ),
        ));
    }

    // N = 8 flip-flop Hadamard: exact factorization behind the printed
    // Φ₆-argument typo.
    let cp = charpoly_of(CoinFamily::Hadamard, CoinType::F, 8);
    let (shares, residual) = strip_cyclotomics(&cp.poly);
    let expected = std::collections::BTreeMap::from([(3, 4), (4, 4), (6, 4), (8, 4)]);
    if shares == expected && residual.is_constant() {
        checks.push(CheckLine::warn(
            "N = 8 flip-flop Hadamard factorization",
            "exact factorization is Φ₃²Φ₄²Φ₆²Φ₈; the printed form typesets the Φ₆ factor \
             with argument 2 instead of x"
                .into(),
            &[warn_ids::HADAMARD8_PHI6],
        ));
    } else {
        checks.push(CheckLine::fail(
            "N = 8 flip-flop Hadamard factorization",
            format!("expected Φ₃²Φ₄²Φ₆²Φ₈, got shares {shares:?} and residual {residual}"),
        ));
    }

    // Printed expansions against the exact determinants.
    checks.push(CheckLine::check(
        "printed N = 16 flip-flop Hadamard expansion",
        charpoly_of(CoinFamily::Hadamard, CoinType::F, 16).poly == printed::hadamard_f_16(),
        "all 17 printed coefficients match exactly".into(),
    ));

    let exact = charpoly_of(CoinFamily::Hadamard, CoinType::M, 16).poly;
    if exact == printed::hadamard_m_16_exact() && exact != printed::hadamard_m_16_printed() {
        checks.push(CheckLine::warn(
            "printed N = 16 moving-coin Hadamard expansion",
            "the printed list is arithmetically wrong (first difference at x²⁸: printed \
             69/2, exact 34); the exact coefficients are the alternating-sign mirror of \
             the flip-flop list"
                .into(),
            &[warn_ids::HADAMARD_M16_EXPANSION],
        ));
    } else {
        checks.push(CheckLine::fail(
            "printed N = 16 moving-coin Hadamard expansion",
            format!(
                "the pinned discrepancy changed shape: matches frozen exact = {}, matches \
                 printed = {}",
                exact == printed::hadamard_m_16_exact(),
                exact == printed::hadamard_m_16_printed()
            ),
        ));
    }

    checks.push(CheckLine::check(
        "printed N = 9 moving-coin Grover expansion",
        charpoly_of(CoinFamily::Grover3, CoinType::M, 9).poly == printed::grover_m_9(),
        "all 28 printed coefficients match exactly".into(),
    ));
    checks.push(CheckLine::check(
        "printed N = 9 flip-flop Grover expansion",
        charpoly_of(CoinFamily::Grover3, CoinType::F, 9).poly == printed::grover_f_9(),
        "all 28 printed coefficients match exactly".into(),
    ));

    // N = 2 moving-coin Grover: the printed expansion drops x-powers, so
    // only the exact polynomial is reported.
    let cp = charpoly_of(CoinFamily::Grover3, CoinType::M, 2);
    checks.push(CheckLine::warn(
        "printed N = 2 moving-coin Grover expansion",
        format!(
            "the printed display drops the powers of x from two terms and is excluded \
             from exact comparison; the exact polynomial is {}",
            cp.poly
        ),
        &[warn_ids::GROVER_M2_DISPLAY],
    ));

    VerifyReport::new("factorizations", checks)
}

/// The eight printed zeta product forms and their weights.
pub fn suite_zetas() -> VerifyReport {
    let mut checks = Vec::new();
    let mut matched = 0usize;
    for (walk, form, c, d) in printed::zeta_forms() {
        let computed = zeta_of_walk(&walk).unwrap();
        let weight = automorphic_weight(&computed);
        let ok = computed == form && weight.c == c && weight.d == d;
        let mut detail = format!(
            "ζ(u) = {computed}, weight (C, D) = ({}, {})",
            weight.c, weight.d
        );
        if walk.family == CoinFamily::Grover3 && walk.coin_type == CoinType::M {
            detail.push_str("; printed unsigned, exact determinant fixes ε = -1");
        }
        matched += ok as usize;
        checks.push(CheckLine::check(
            &format!("printed zeta form for {:?}-{:?} N = {}", walk.family, walk.coin_type, walk.n),
            ok,
            detail,
        ));
    }
    checks.push(CheckLine::check(
        "printed zeta forms, summary",
        matched == 8,
        format!("{matched} of 8 printed zeta forms matched (moving-coin Grover form matched \
                 with computed ε = -1)"),
    ));
    VerifyReport::new("zetas", checks)
}

/// Tolerances used by the absolute-zeta suite, mirrored by the acceptance
/// gate.
pub const LADDER_IDENTITY_TOL: f64 = 1e-9;
pub const LATTICE_AGREEMENT_TOL: f64 = 1e-8;
pub const CLOSED_FORM_TOL: f64 = 1e-8;
pub const TRANSFORM_ORACLE_TOL: f64 = 1e-6;
pub const FUNCTIONAL_EQ_TOL: f64 = 1e-6;

/// Ladder evaluator internals: recursion identity, brute-force lattice
/// sums, rank-1 closed forms, the explicit zeta/sine closed forms of the
/// smallest flip-flop walk, and the transform against the integral oracle.
pub fn suite_absolute() -> VerifyReport {
    let cfg = BarnesEvalConfig::default();
    let mut checks = Vec::new();

    // (a) Recursion identity ζ_r(s, x) = ζ_{r−1}(s, x) + ζ_r(s, x + ω_r)
    // on continued and convergent points, ranks 2..4.
    let mut worst: f64 = 0.0;
    for omega in [vec![2u64, 8], vec![2, 2, 8], vec![2, 2, 3, 3]] {
        let (head, last) = (&omega[..omega.len() - 1], omega[omega.len() - 1]);
        for s in [Complex64::new(2.5, 0.0), Complex64::new(-1.5, 0.8)] {
            for x in [0.7, 2.9] {
                let whole = barnes_zeta(&omega, x, s, &cfg).unwrap();
                let peeled = barnes_zeta(head, x, s, &cfg).unwrap()
                    + barnes_zeta(&omega, x + last as f64, s, &cfg).unwrap();
                worst = worst.max((whole - peeled).norm());
            }
        }
    }
    checks.push(CheckLine::check(
        "ladder recursion identity, ranks 2..4",
        worst < LADDER_IDENTITY_TOL,
        format!("max residual {worst:.3e} (tolerance {LADDER_IDENTITY_TOL:.0e})"),
    ));

    // (b) Continued evaluator vs direct lattice summation in the
    // comfortably convergent regime.
    let mut worst: f64 = 0.0;
    for (omega, x, s) in [
        (vec![8u64], 0.8, Complex64::new(2.5, 0.0)),
        (vec![2, 8], 1.0, Complex64::new(3.5, -0.6)),
        (vec![2, 2, 8], 2.4, Complex64::new(4.5, 0.0)),
    ] {
        let ladder = barnes_zeta(&omega, x, s, &cfg).unwrap();
        let direct = brute_force_barnes_zeta(&omega, x, s, 1e-9);
        worst = worst.max((ladder - direct).norm() / direct.norm());
    }
    checks.push(CheckLine::check(
        "ladder vs direct lattice summation",
        worst < LATTICE_AGREEMENT_TOL,
        format!("max relative error {worst:.3e} (tolerance {LATTICE_AGREEMENT_TOL:.0e})"),
    ));

    // (c) Rank-1 closed forms: log Γ₁ against the classical gamma
    // function and S₁ against the sine.
    let mut worst: f64 = 0.0;
    for (w, x) in [(1u64, 0.3), (2, 1.7), (8, 3.1)] {
        let wf = w as f64;
        let lg = log_multiple_gamma(&[w], x, &cfg).unwrap();
        let closed = ln_gamma(x / wf) - 0.5 * (2.0 * std::f64::consts::PI).ln()
            + (x / wf - 0.5) * wf.ln();
        worst = worst.max((lg - closed).abs());
        let sine = multiple_sine(&[w], x.min(wf * 0.9), &cfg).unwrap();
        let closed_sine = 2.0 * (std::f64::consts::PI * x.min(wf * 0.9) / wf).sin();
        worst = worst.max((sine - closed_sine).abs());
    }
    checks.push(CheckLine::check(
        "rank-1 closed forms (gamma, sine)",
        worst < LADDER_IDENTITY_TOL,
        format!("max absolute error {worst:.3e} (tolerance {LADDER_IDENTITY_TOL:.0e})"),
    ));

    // Explicit closed forms of the smallest flip-flop walk: the gamma
    // ratio for ζ_f and the cotangent for ε_f.
    let hf2 = plan_absolute_zeta(&zeta_of_walk(&spec(CoinFamily::Hadamard, CoinType::F, 2)).unwrap());
    let mut worst: f64 = 0.0;
    for s in [-3.0, -2.0, -1.0, 1.0, 2.0] {
        let z = zeta_f(s, &hf2, &cfg).unwrap();
        let closed = (ln_gamma((s + 4.0) / 8.0) - ln_gamma((s + 8.0) / 8.0)).exp()
            / 8.0f64.sqrt();
        worst = worst.max((z - closed).abs() / closed.abs());
    }
    checks.push(CheckLine::check(
        "zeta closed form, flip-flop N = 2",
        worst < CLOSED_FORM_TOL,
        format!("max relative error {worst:.3e} vs Γ((s+4)/8)/Γ((s+8)/8)·8^(-1/2)"),
    ));

    let mut worst: f64 = 0.0;
    for s in [-3.5, -2.5, -1.5, -0.5] {
        let e = epsilon_f(s, &hf2, &cfg).unwrap();
        let closed = -1.0 / (s * std::f64::consts::PI / 8.0).tan();
        worst = worst.max((e - closed).abs() / closed.abs());
    }
    checks.push(CheckLine::check(
        "epsilon closed form, flip-flop N = 2",
        worst < CLOSED_FORM_TOL,
        format!("max relative error {worst:.3e} vs -cot(sπ/8)"),
    ));

    // Two-variable transform against the independent Mellin quadrature.
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
            let series = z_f(Complex64::new(w, 0.0), Complex64::new(s, 0.0), &plan, &cfg).unwrap();
            let integral = z_f_mellin_oracle(w, s, &form).unwrap();
            worst = worst.max((series.re - integral).abs() / integral.abs().max(1e-300));
        }
    }
    checks.push(CheckLine::check(
        "transform vs Mellin quadrature oracle, 4 walks × 2 points",
        worst < TRANSFORM_ORACLE_TOL,
        format!("max relative error {worst:.3e} (tolerance {TRANSFORM_ORACLE_TOL:.0e})"),
    ));

    VerifyReport::new("absolute", checks)
}

/// Functional equations ζ_f(D−s)^C = ε_f(s)·ζ_f(s) on a 10-point grid
/// inside the critical strip for all eight finite-period walks.
pub fn suite_functional_eq() -> VerifyReport {
    let cfg = BarnesEvalConfig::default();
    let mut checks = Vec::new();
    for (walk, form, _, d) in printed::zeta_forms() {
        let plan = plan_absolute_zeta(&form);
        let mut worst: f64 = 0.0;
        for k in 0..10 {
            let s = d as f64 + (k as f64 + 0.25) * (-d as f64) / 10.0;
            let r = functional_eq_residual(s, &plan, &cfg).unwrap();
            worst = worst.max(r);
        }
        checks.push(CheckLine::check(
            &format!(
                "functional equation for {:?}-{:?} N = {}",
                walk.family, walk.coin_type, walk.n
            ),
            worst < FUNCTIONAL_EQ_TOL,
            format!(
                "max residual {worst:.3e} on 10 points in ({d}, 0) with C = {}, D = {d}",
                form.weight_c()
            ),
        ));
    }
    VerifyReport::new("functional-eq", checks)
}
