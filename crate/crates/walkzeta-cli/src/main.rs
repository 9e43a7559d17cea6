//! `walkzeta`: coined quantum walks on cycles — exact periods, zeta
//! product forms and their absolute zeta functions, from the command line.
//!
//! Subcommands: `analyze` (one walk end to end), `sweep` (period tables
//! over a size range), `verify` (the bundled verification suites), `eval`
//! (numeric values of Z, ζ_f, ε_f or the functional-equation residual)
//! and `print-schema` (the embedded JSON schema for all reports).
//!
//! Exit codes: 0 on success (warnings included), 1 when a verification
//! check fails or no evaluation point succeeds, 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use walkzeta::periodicity::CoefficientRing;
use walkzeta::report::{
    analyze, render, sweep_row, AnalysisReport, AnalyzeOptions, CheckStatus, EvalReport, EvalRow,
    SweepReport, SweepRow, VerifyReport, REPORT_SCHEMA,
};
use walkzeta::verify::run_suite;
use walkzeta::walk::{CoinFamily, CoinType, WalkSpec};
use walkzeta::zeta::zeta_of_walk;
use walkzeta::{
    epsilon_f, functional_eq_residual, plan_absolute_zeta, z_f, zeta_f, BarnesEvalConfig,
    PeriodVerdict,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "walkzeta",
    version,
    about = "Exact periods and absolute zeta functions of coined quantum walks on cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one walk: unitarity, characteristic polynomial, period,
    /// zeta form, weights and sampled absolute-zeta values
    Analyze {
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate periods and coefficient rings over a range of cycle sizes
    Sweep {
        /// Smallest cycle size (inclusive, at least 2).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n_min: u64,
        /// Largest cycle size (inclusive).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n_max: u64,
        /// Restrict to one coin family (default: both).
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Restrict to one coin placement (default: both).
        #[arg(long = "type", value_enum)]
        coin_type: Option<TypeArg>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite; exits 1 if any check fails
    Verify {
        /// Which suite to run.
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a zeta quantity of a finite-period walk at given points
    Eval {
        /// Quantity to evaluate.
        #[arg(value_enum)]
        quantity: QuantityArg,
        #[command(flatten)]
        walk: WalkArgs,
        /// Comma-separated points: `s1,s2,…` — or `w1:s1,w2:s2,…` for Z.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Target relative tolerance for the ladder evaluator.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the embedded JSON schema that all report envelopes satisfy
    PrintSchema,
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    /// Two-dimensional Hadamard coin.
    #[value(name = "hadamard")]
    Hadamard,
    /// Three-dimensional Grover coin.
    #[value(name = "grover3")]
    Grover3,
}

impl From<FamilyArg> for CoinFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Hadamard => CoinFamily::Hadamard,
            FamilyArg::Grover3 => CoinFamily::Grover3,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum TypeArg {
    /// Moving coin.
    #[value(name = "M", alias = "m")]
    M,
    /// Flip-flop coin.
    #[value(name = "F", alias = "f")]
    F,
}

impl From<TypeArg> for CoinType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::M => CoinType::M,
            TypeArg::F => CoinType::F,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Factorizations,
    Zetas,
    Absolute,
    #[value(name = "functional-eq")]
    FunctionalEq,
    All,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Factorizations => "factorizations",
            SuiteArg::Zetas => "zetas",
            SuiteArg::Absolute => "absolute",
            SuiteArg::FunctionalEq => "functional-eq",
            SuiteArg::All => "all",
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum QuantityArg {
    /// Two-variable transform Z(w, s).
    #[value(name = "Z", alias = "z")]
    Z,
    /// Absolute zeta function ζ_f(s).
    Zeta,
    /// Functional-equation factor ε_f(s).
    Epsilon,
    /// Relative residual of the functional equation at s.
    Residual,
}

impl QuantityArg {
    fn name(self) -> &'static str {
        match self {
            QuantityArg::Z => "Z",
            QuantityArg::Zeta => "zeta",
            QuantityArg::Epsilon => "epsilon",
            QuantityArg::Residual => "residual",
        }
    }
}

#[derive(Args)]
struct WalkArgs {
    /// Coin family.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Coin placement convention.
    #[arg(long = "type", value_enum)]
    coin_type: TypeArg,
    /// Cycle length (at least 2).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
}

impl WalkArgs {
    fn spec(&self) -> WalkSpec {
        WalkSpec::new(self.family.into(), self.coin_type.into(), self.n as usize)
            .expect("clap already validated n >= 2")
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, content: &str) -> Result<(), String> {
        match &self.out {
            Some(path) => std::fs::write(path, content)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { walk, output } => cmd_analyze(&walk, &output),
        Command::Sweep { n_min, n_max, family, coin_type, output } => {
            cmd_sweep(n_min, n_max, family, coin_type, &output)
        }
        Command::Verify { suite, output } => cmd_verify(suite, &output),
        Command::Eval { quantity, walk, points, tol, output } => {
            cmd_eval(quantity, &walk, &points, tol, &output)
        }
        Command::PrintSchema => {
            print!("{REPORT_SCHEMA}");
            ExitCode::SUCCESS
        }
    }
}

fn finish(output: &OutputArgs, content: String, code: ExitCode) -> ExitCode {
    match output.emit(&content) {
        Ok(()) => code,
        Err(msg) => usage_error(&msg),
    }
}

fn cmd_analyze(walk: &WalkArgs, output: &OutputArgs) -> ExitCode {
    let report = analyze(&walk.spec(), &AnalyzeOptions::default());
    let content = match output.format {
        FormatArg::Json => render("analyze", &report),
        FormatArg::Text => analysis_text(&report),
    };
    finish(output, content, ExitCode::SUCCESS)
}

fn cmd_sweep(
    n_min: u64,
    n_max: u64,
    family: Option<FamilyArg>,
    coin_type: Option<TypeArg>,
    output: &OutputArgs,
) -> ExitCode {
    if n_min > n_max {
        return usage_error(&format!("--n-min {n_min} exceeds --n-max {n_max}"));
    }
    let families: Vec<CoinFamily> = match family {
        Some(f) => vec![f.into()],
        None => vec![CoinFamily::Hadamard, CoinFamily::Grover3],
    };
    let types: Vec<CoinType> = match coin_type {
        Some(t) => vec![t.into()],
        None => vec![CoinType::M, CoinType::F],
    };
    let mut specs = Vec::new();
    for &f in &families {
        for &t in &types {
            for n in n_min..=n_max {
                specs.push(WalkSpec::new(f, t, n as usize).expect("n >= 2 by construction"));
            }
        }
    }
    // Indexed parallel map: the collected order equals the spec order, so
    // the output is byte-identical at every parallelism level.
    let rows: Vec<SweepRow> = specs.par_iter().map(sweep_row).collect();
    let report = SweepReport { rows };
    let content = match output.format {
        FormatArg::Json => render("sweep", &report),
        FormatArg::Text => sweep_text(&report),
    };
    finish(output, content, ExitCode::SUCCESS)
}

fn cmd_verify(suite: SuiteArg, output: &OutputArgs) -> ExitCode {
    let report = run_suite(suite.name()).expect("clap restricts suites to the known names");
    let code = if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    };
    let content = match output.format {
        FormatArg::Json => render("verify", &report),
        FormatArg::Text => verify_text(&report),
    };
    finish(output, content, code)
}

fn cmd_eval(
    quantity: QuantityArg,
    walk: &WalkArgs,
    points: &str,
    tol: f64,
    output: &OutputArgs,
) -> ExitCode {
    if !(tol > 0.0 && tol < 1.0) {
        return usage_error(&format!("--tol must lie in (0, 1), got {tol}"));
    }
    let spec = walk.spec();
    let form = match zeta_of_walk(&spec) {
        Ok(form) => form,
        Err(e) => return usage_error(&e.to_string()),
    };
    let parsed = match parse_points(quantity, points) {
        Ok(p) => p,
        Err(msg) => return usage_error(&msg),
    };

    let plan = plan_absolute_zeta(&form);
    let cfg = BarnesEvalConfig { target_rel_tol: tol, ..BarnesEvalConfig::default() };
    let rows: Vec<EvalRow> = parsed
        .into_iter()
        .map(|(w, s)| {
            let value = match quantity {
                QuantityArg::Z => z_f(
                    Complex64::new(w.expect("Z points carry w"), 0.0),
                    Complex64::new(s, 0.0),
                    &plan,
                    &cfg,
                )
                .map(|v| v.re),
                QuantityArg::Zeta => zeta_f(s, &plan, &cfg),
                QuantityArg::Epsilon => epsilon_f(s, &plan, &cfg),
                QuantityArg::Residual => functional_eq_residual(s, &plan, &cfg),
            };
            match value {
                Ok(v) => EvalRow { w, s, value: Some(v), tol, error: None },
                Err(e) => EvalRow { w, s, value: None, tol, error: Some(e.to_string()) },
            }
        })
        .collect();

    let any_succeeded = rows.iter().any(|r| r.value.is_some());
    let report = EvalReport { spec, quantity: quantity.name().into(), rows };
    let content = match output.format {
        FormatArg::Json => render("eval", &report),
        FormatArg::Text => eval_text(&report),
    };
    let code = if any_succeeded {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    };
    finish(output, content, code)
}

/// Parse `--points`: bare `s` values, or `w:s` pairs for the two-variable
/// transform.
fn parse_points(quantity: QuantityArg, points: &str) -> Result<Vec<(Option<f64>, f64)>, String> {
    let mut out = Vec::new();
    for part in points.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty entry in --points".into());
        }
        match quantity {
            QuantityArg::Z => {
                let (w, s) = part
                    .split_once(':')
                    .ok_or_else(|| format!("Z points must be w:s pairs, got `{part}`"))?;
                out.push((Some(parse_f64(w)?), parse_f64(s)?));
            }
            _ => out.push((None, parse_f64(part)?)),
        }
    }
    if out.is_empty() {
        return Err("--points is empty".into());
    }
    Ok(out)
}

fn parse_f64(text: &str) -> Result<f64, String> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| format!("`{text}` is not a number"))
}

fn family_name(f: CoinFamily) -> &'static str {
    match f {
        CoinFamily::Hadamard => "hadamard",
        CoinFamily::Grover3 => "grover3",
    }
}

fn type_name(t: CoinType) -> &'static str {
    match t {
        CoinType::M => "M",
        CoinType::F => "F",
    }
}

fn ring_name(r: CoefficientRing) -> &'static str {
    match r {
        CoefficientRing::InZ => "Z",
        CoefficientRing::InQNotZ => "QnotZ",
        CoefficientRing::NotInQ => "notQ",
    }
}

fn spec_label(spec: &WalkSpec) -> String {
    format!("{} {} N={}", family_name(spec.family), type_name(spec.coin_type), spec.n)
}

fn period_label(p: &PeriodVerdict) -> String {
    match p {
        PeriodVerdict::Finite(t) => t.to_string(),
        PeriodVerdict::Infinite => "∞".into(),
    }
}

fn analysis_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "walk               : {}", spec_label(&r.spec));
    let _ = writeln!(s, "unitary            : {}", r.unitary);
    let _ = writeln!(s, "coefficient ring   : {}", ring_name(r.coefficient_ring));
    let _ = writeln!(s, "char poly (x^0 ..) : {}", r.char_poly.join(", "));
    let content = if r.cyclotomic_factorization.is_empty() {
        "none".to_string()
    } else {
        r.cyclotomic_factorization
            .iter()
            .map(|(n, deg)| format!("Φ{n}:{deg}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(s, "cyclotomic content : {content}  (degree shares)");
    let _ = writeln!(s, "residual cofactor  : {}", r.residual);
    let _ = writeln!(
        s,
        "period             : {}",
        match r.period {
            PeriodVerdict::Finite(t) => format!("finite, T = {t}"),
            PeriodVerdict::Infinite => "infinite".into(),
        }
    );
    if let Some(zf) = &r.zeta_form {
        let _ = writeln!(s, "zeta form          : {}", zf.display);
    }
    if let Some(w) = &r.weight {
        let _ = writeln!(
            s,
            "weight             : C = {}, D = {}  (max |residual| {:.3e}, tol {:.0e})",
            w.c, w.d, w.max_abs_residual, w.tol
        );
    }
    if !r.abs_zeta_samples.is_empty() {
        let _ = writeln!(s, "samples:");
        let _ = writeln!(
            s,
            "  {:>9}  {:>18}  {:>18}  {:>12}  {:>8}",
            "s", "zeta_f", "epsilon_f", "residual", "tol"
        );
        for row in &r.abs_zeta_samples {
            let _ = writeln!(
                s,
                "  {:>9.4}  {:>18.12e}  {:>18.12e}  {:>12.3e}  {:>8.0e}",
                row.s, row.zeta_f, row.epsilon_f, row.functional_eq_residual, row.tol
            );
        }
    }
    if !r.discrepancies.is_empty() {
        let _ = writeln!(s, "discrepancies:");
        for d in &r.discrepancies {
            let _ = writeln!(s, "  {}: {}", d.id, d.summary);
        }
    }
    s
}

fn sweep_text(r: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<9} {:<4} {:>4}  {:>7}  {:<5}", "family", "type", "N", "period", "ring");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{:<9} {:<4} {:>4}  {:>7}  {:<5}",
            family_name(row.spec.family),
            type_name(row.spec.coin_type),
            row.spec.n,
            period_label(&row.period),
            ring_name(row.coefficient_ring),
        );
    }
    s
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "suite: {}", r.suite);
    let mut warns = 0usize;
    let mut fails = 0usize;
    for c in &r.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Warn => {
                warns += 1;
                "WARN"
            }
            CheckStatus::Fail => {
                fails += 1;
                "FAIL"
            }
        };
        let ids = if c.warn_ids.is_empty() {
            String::new()
        } else {
            format!(" [{}]", c.warn_ids.join(", "))
        };
        let _ = writeln!(s, "{status}  {}{ids} — {}", c.name, c.detail);
    }
    let _ = writeln!(
        s,
        "result: {} ({} checks, {} warnings, {} failures)",
        if r.passed { "PASS" } else { "FAIL" },
        r.checks.len(),
        warns,
        fails
    );
    s
}

fn eval_text(r: &EvalReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "walk     : {}", spec_label(&r.spec));
    let _ = writeln!(s, "quantity : {}", r.quantity);
    let _ = writeln!(s, "{:>10}  {:>10}  {:>22}  {:>8}", "w", "s", "value", "tol");
    for row in &r.rows {
        let w = row.w.map_or_else(|| "-".into(), |w| format!("{w:.4}"));
        match (&row.value, &row.error) {
            (Some(v), _) => {
                let _ = writeln!(s, "{w:>10}  {:>10.4}  {:>22.15e}  {:>8.0e}", row.s, v, row.tol);
            }
            (None, Some(e)) => {
                let _ = writeln!(s, "{w:>10}  {:>10.4}  error: {e}", row.s);
            }
            (None, None) => unreachable!("rows carry a value or an error"),
        }
    }
    s
}
