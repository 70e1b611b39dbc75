//! The exponential error envelope: how far an exponential density can sit
//! from the reference law, as a function of its rate.
//!
//! The criterion value is periodic in the decade of the rate, so scanning
//! one decade of rates bounds the envelope for every rate. The scan data
//! here is the same thing `benford-kit scan` emits as CSV for plotting.
//!
//! ```bash
//! cargo run --example exponential_error_scan
//! ```

use benford_kit::conformance::{er_scan, log_spaced_rates};
use benford_kit::digits::benford_first_digit;

fn main() -> Result<(), benford_kit::Error> {
    let rates = log_spaced_rates(1.0, 10.0, 256)?;
    println!("per-digit envelope over 256 rates in [1, 10):");
    println!("  digit   reference    max |er|    worst-case band");
    let mut global: f64 = 0.0;
    for d in 1..=9 {
        let scan = er_scan(d, &rates, 1e-12)?;
        let p = benford_first_digit(d)?;
        println!(
            "  {:>5}   {:>9.6}   {:>9.6}    [{:.6}, {:.6}]",
            d,
            p,
            scan.max_abs,
            p - scan.max_abs,
            p + scan.max_abs
        );
        global = global.max(scan.max_abs);
    }
    println!("\nglobal envelope: max |er| = {global:.6} (every exponential density, every digit)");

    let scan = er_scan(1, &rates, 1e-12)?;
    let (worst_rate, worst_er) = scan
        .values
        .iter()
        .copied()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .unwrap();
    println!("digit 1 is extremal near rate {worst_rate:.4} with er = {worst_er:+.6}");
    Ok(())
}
