//! Scale invariance: multiplying a conforming random variable by a constant
//! leaves its digit distribution unchanged; narrow distributions have no
//! such luck.
//!
//! Power-of-ten factors re-index the decade sum exactly, so they preserve
//! digit probabilities for every density. Generic factors preserve them only
//! when the density already conforms.
//!
//! ```bash
//! cargo run --example scale_invariance
//! ```

use benford_kit::conformance::scale_invariance_check;
use benford_kit::density::{BenfordExact, Exponential, Uniform};

fn main() -> Result<(), benford_kit::Error> {
    let tol = 1e-9;

    println!("decade factors are exact for any density (digit 3 shown):");
    let exponential = Exponential::new(1.0)?;
    for j in [-2i32, 1, 3] {
        let factor = 10f64.powi(j);
        let (p, q) = scale_invariance_check(&exponential, factor, 3, tol)?;
        println!(
            "  exponential, a = 1e{j:+}: P(3) = {:.12} vs scaled {:.12}  (gap {:.2e})",
            p.value,
            q.value,
            (p.value - q.value).abs()
        );
    }

    println!("\na conforming density shrugs off any factor:");
    let reference = BenfordExact::new();
    for factor in [3.7, 0.042, 12.0] {
        let (p, q) = scale_invariance_check(&reference, factor, 1, tol)?;
        println!(
            "  reference density, a = {factor}: P(1) = {:.9} vs scaled {:.9}",
            p.value, q.value
        );
    }

    println!("\na narrow density does not:");
    let uniform = Uniform::new(1.0, 2.0)?;
    for factor in [5.0, 2.5] {
        let (p, q) = scale_invariance_check(&uniform, factor, 1, tol)?;
        println!(
            "  uniform [1,2), a = {factor}: P(1) = {:.3} vs scaled {:.3}",
            p.value, q.value
        );
    }
    println!("  (the shifted supports carry no digit-1 mass at all)");
    Ok(())
}
