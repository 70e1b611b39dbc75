//! Exact first-digit distributions of analytic densities, with certified
//! error bounds, and the per-digit criterion that decides conformance.
//!
//! ```bash
//! cargo run --example exact_digit_distribution
//! ```

use benford_kit::conformance::{conformance_verdict, error_report, DEFAULT_THRESHOLD};
use benford_kit::density::{BenfordExact, Density, Exponential, TruncatedNormal, Uniform};

fn show(name: &str, density: &dyn Density, tol: f64) -> Result<(), benford_kit::Error> {
    let report = error_report(&density, tol)?;
    println!("{name}:");
    println!("  digit   P(digit)        reference       er");
    for e in &report.entries {
        println!(
            "  {:>5}   {:>12.9}   {:>12.9}   {:>+.6}",
            e.digit, e.probability, e.reference, e.er
        );
    }
    let verdict = conformance_verdict(&report, DEFAULT_THRESHOLD);
    println!(
        "  max |er| = {:.6}  ->  {verdict} (threshold {DEFAULT_THRESHOLD})\n",
        report.max_abs_er
    );
    Ok(())
}

fn main() -> Result<(), benford_kit::Error> {
    // spreads over every decade with reciprocal weight: conforms exactly
    show(
        "reference density 1/(x ln 10) on [1,10)",
        &BenfordExact::new(),
        1e-10,
    )?;
    // spreads over many decades: conforms within a few percent
    show("exponential, rate 1", &Exponential::new(1.0)?, 1e-8)?;
    // a single decade of support: wildly non-conforming
    show("uniform on [1,2)", &Uniform::new(1.0, 2.0)?, 1e-10)?;
    // narrow bell around 50: leading digits pile onto 3..7
    show(
        "normal(50, 10) truncated to x > 0",
        &TruncatedNormal::new(50.0, 10.0)?,
        1e-8,
    )?;
    Ok(())
}
