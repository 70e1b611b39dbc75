//! The closed-form reference laws: first digits, longer digit patterns,
//! significand intervals, and other bases.
//!
//! ```bash
//! cargo run --example first_digit_law
//! ```

use benford_kit::digits::{
    benford_first_digit, benford_interval_prob, benford_pattern_prob, DigitPattern,
    SignificandInterval,
};

fn main() -> Result<(), benford_kit::Error> {
    println!("first-digit law, base 10:");
    let mut total = 0.0;
    for d in 1..=9 {
        let p = benford_first_digit(d)?;
        total += p;
        println!(
            "  P({d}) = {p:.9}   {}",
            "#".repeat((p * 100.0).round() as usize)
        );
    }
    println!("  sum    = {total:.12}\n");

    println!("longer patterns:");
    for digits in [vec![1, 2], vec![9, 9], vec![3, 1, 4]] {
        let pattern = DigitPattern::new(10, digits.clone())?;
        println!(
            "  P(leading {:?}) = {:.9}",
            digits,
            benford_pattern_prob(&pattern)
        );
    }

    println!("\nsignificand intervals (base-invariant form):");
    for (base, lo, hi) in [(10u32, 1.0, 2.0), (16, 1.0, 2.0), (2, 1.0, 2.0)] {
        let interval = SignificandInterval::new(base, lo, hi)?;
        println!(
            "  base {base:>2}, significand in [{lo}, {hi}): {:.9}",
            benford_interval_prob(&interval)
        );
    }

    println!("\nevery base partitions to one:");
    for base in [2u32, 8, 10, 16] {
        let sum: f64 = (1..base)
            .map(|d| {
                let iv = SignificandInterval::new(base, d as f64, d as f64 + 1.0).unwrap();
                benford_interval_prob(&iv)
            })
            .sum();
        println!("  base {base:>2}: sum over first digits = {sum:.12}");
    }
    Ok(())
}
