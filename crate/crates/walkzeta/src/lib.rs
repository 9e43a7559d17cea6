//! Exact spectral analysis of coined quantum walks on cycle graphs.
//!
//! The crate builds the walk operators over the field Q(√2), extracts their
//! characteristic polynomials with exact arithmetic, decides walk periodicity
//! from the cyclotomic content of the spectrum, rewrites the reciprocal
//! characteristic polynomial as a signed product of (u^n - 1) factors, and
//! evaluates the absolute zeta functions attached to those product forms with
//! double-precision error control.

pub mod abszeta;
pub mod algebra;
pub mod periodicity;
pub mod report;
pub mod spectral;
pub mod verify;
pub mod walk;
pub mod zeta;

pub use abszeta::{
    barnes_zeta, epsilon_f, functional_eq_residual, log_multiple_gamma, multiple_sine,
    plan_absolute_zeta, z_f, zeta_f, AbsZetaError, AbsZetaPlan, BarnesEvalConfig,
};
pub use algebra::{cyclotomic, Poly, QuadRat, Rational};
pub use periodicity::{
    integer_coefficient_test, period, period_of_char_poly, strip_cyclotomics, CoefficientRing,
    PeriodResult, PeriodVerdict,
};
pub use report::{
    analyze, known_discrepancies, parse, render, sweep_row, AnalysisReport, AnalyzeOptions,
    CheckLine, CheckStatus, Discrepancy, Envelope, EvalReport, EvalRow, ReportError, SweepReport,
    SweepRow, VerifyReport, REPORT_SCHEMA, REPORT_VERSION,
};
pub use spectral::{char_poly, CharPoly};
pub use verify::{run_suite, SUITES};
pub use walk::{build_operator, CoinFamily, CoinType, WalkSpec};
pub use zeta::{zeta_of_walk, ZetaProductForm};
