//! Exact leading-digit distributions of probability densities, a
//! quantitative conformance criterion for the logarithmic first-digit law,
//! and digit-frequency screening for empirical datasets.
//!
//! The first significant digit of a draw from a density `f` on the positive
//! reals is `d` exactly when the draw lands in `⋃ₙ [d·10ⁿ, (d+1)·10ⁿ)`.
//! This crate computes that probability as a certified decade sum, compares
//! it against the reference law `log₁₀(1 + 1/d)`, and reports the signed
//! gap `er(d)` per digit. Densities spreading over many orders of magnitude
//! come out close to the reference law; narrow ones (uniform, normal) do
//! not — which is what makes digit tests useful for screening ledgers.
//!
//! # Layout
//!
//! - [`digits`] — significand arithmetic, digit extraction, the closed-form
//!   reference laws, and the indicator/Δ kernel.
//! - [`density`] — the [`Density`](density::Density) trait, the built-in
//!   analytic densities, and certified piecewise-linear approximation.
//! - [`conformance`] — exact per-digit probabilities of densities, the
//!   `er` criterion (two independent routes), the exponential closed-form
//!   series, scans, and verdicts.
//! - [`empirical`] — digit counting, chi-square and MAD statistics with
//!   shipped critical values, and Monte Carlo cross-checks.
//! - [`cli`] — the `benford-kit` command-line surface.
//!
//! # Quick start
//!
//! ```
//! use benford_kit::conformance::{error_report, conformance_verdict, Verdict};
//! use benford_kit::density::Exponential;
//!
//! let density = Exponential::new(1.0)?;
//! let report = error_report(&density, 1e-8)?;
//! assert!(report.max_abs_er <= 0.03);
//! assert_eq!(conformance_verdict(&report, 0.03), Verdict::Conforms);
//! # Ok::<(), benford_kit::Error>(())
//! ```
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod cli;
pub mod conformance;
pub mod density;
pub mod digits;
pub mod empirical;
mod error;
mod parallel;
pub mod quadrature;

pub use error::{Error, Result};

/// A value paired with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}
