//! Extending the criterion to discontinuous densities: approximate a step
//! density by a continuous piecewise-linear one with a certified L1 cost,
//! then watch the criterion values transfer within that cost.
//!
//! The criterion kernel is bounded by one in absolute value, so
//! |er(f) − er(h)| can never exceed the L1 distance between f and h.
//!
//! ```bash
//! cargo run --example piecewise_approximation
//! ```

use benford_kit::conformance::error_functional;
use benford_kit::density::{approximate_piecewise_linear, PiecewiseConstant};

fn main() -> Result<(), benford_kit::Error> {
    // height 1/2 on [1,2) ∪ [3,4): all mass on digits 1 and 3, with jumps
    let step = PiecewiseConstant::two_block_step();

    for eps in [1e-2, 1e-3, 1e-4] {
        let (smooth, l1_bound) = approximate_piecewise_linear(&step, eps)?;
        println!(
            "eps = {eps:.0e}: {} nodes, certified L1 bound {l1_bound:.3e}",
            smooth.nodes().len()
        );
    }

    let (smooth, l1_bound) = approximate_piecewise_linear(&step, 1e-3)?;
    println!("\ncriterion transfer at eps = 1e-3 (bound {l1_bound:.3e}):");
    println!("  digit   er(step)      er(smooth)    |gap|");
    for d in 1..=9 {
        let er_f = error_functional(&step, d, 1e-10)?;
        let er_h = error_functional(&smooth, d, 1e-10)?;
        let gap = (er_f.value - er_h.value).abs();
        assert!(gap <= l1_bound);
        println!(
            "  {:>5}   {:>+10.6}   {:>+10.6}   {:.2e}",
            d, er_f.value, er_h.value, gap
        );
    }
    println!("\nevery gap sits inside the certificate, as it must.");
    Ok(())
}
