//! Monte Carlo cross-check: sampled first-digit frequencies against the
//! exact decade-sum probabilities, per digit, at four standard errors.
//!
//! This is the validation loop the test suite runs at n = 10⁶; here it
//! prints the bands so the agreement is visible.
//!
//! ```bash
//! cargo run --release --example monte_carlo_validation
//! ```

use benford_kit::conformance::exact_digit_prob;
use benford_kit::density::{BenfordExact, Density, Exponential};
use benford_kit::empirical::monte_carlo_digit_freq;

fn check(name: &str, density: &dyn Density, n: usize, seed: u64) -> Result<(), benford_kit::Error> {
    println!("{name}, n = {n}:");
    println!("  digit   exact        sampled      |z|");
    for d in 1..=9 {
        let exact = exact_digit_prob(&density, d, 1e-9)?;
        let (freq, std_error) = monte_carlo_digit_freq(&density, n, seed, d)?;
        let z = (freq - exact.value).abs() / std_error;
        assert!(z <= 4.0, "digit {d} outside the 4-sigma band");
        println!("  {:>5}   {:>9.6}   {:>9.6}   {z:.2}", d, exact.value, freq);
    }
    println!();
    Ok(())
}

fn main() -> Result<(), benford_kit::Error> {
    let n = 200_000;
    check("exponential, rate 1", &Exponential::new(1.0)?, n, 2024)?;
    check("reference density", &BenfordExact::new(), n, 2024)?;
    println!("all digits within four binomial standard errors of the exact values.");
    Ok(())
}
