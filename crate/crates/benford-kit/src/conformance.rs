//! Exact leading-digit probabilities of densities and the conformance
//! criterion.
//!
//! The probability that a draw from a density `f` has first digit `d` is a
//! doubly infinite sum of per-decade interval masses. This module truncates
//! that sum with a certified tail, evaluates it, and compares against the
//! logarithmic reference law. The signed difference `er(d)` — equivalently
//! the integral of `f` against the oscillating kernel Δ — is the criterion:
//! small `|er|` across all digits means the density conforms.
//!
//! Two independent evaluation routes are kept side by side: the
//! reference-subtraction route built on interval masses, and direct
//! quadrature of `f·Δ`. The second exists to cross-check the first.

use crate::density::Density;
use crate::digits::{
    benford_first_digit, benford_interval_prob, mul_pow_base, pow10, SignificandInterval,
};
use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quadrature::{adaptive_quadrature, DEFAULT_QUAD_BUDGET};
use crate::Estimate;

/// Default conformance threshold on `max |er|`.
///
/// Exponential densities stay within 0.03 of the reference law for every
/// rate and digit, which makes 0.03 a natural default cut between
/// "conforms" and "violates"; it is a policy choice, not a theorem, and
/// every entry point lets the caller override it.
pub const DEFAULT_THRESHOLD: f64 = 0.03;

/// A finite window of decade exponents with a certificate for the mass that
/// was left out.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct TruncationWindow {
    pub n_min: i32,
    pub n_max: i32,
    /// Upper bound on the density mass outside the window.
    pub certified_tail: f64,
}

/// Expands the decade window `[base^n_min, base^(n_max+1))` outward from
/// unity until the excluded mass is certifiably at most `tail_tol`.
pub fn decade_window<D: Density + ?Sized>(
    density: &D,
    base: u32,
    tail_tol: f64,
) -> Result<TruncationWindow> {
    if base < 2 {
        return Err(Error::domain(format!(
            "base must be at least 2, got {base}"
        )));
    }
    if tail_tol.is_nan() || tail_tol <= 0.0 {
        return Err(Error::domain("tail tolerance must be positive"));
    }
    let mut last = 1.0;
    for j in 0..=1100i32 {
        let t = mul_pow_base(1.0, base, j);
        if !t.is_finite() {
            break;
        }
        last = density.tail_mass(t);
        if last <= tail_tol {
            return Ok(TruncationWindow {
                n_min: -j,
                n_max: j - 1,
                certified_tail: last,
            });
        }
    }
    Err(Error::ToleranceNotMet {
        requested: tail_tol,
        achieved: last,
    })
}

/// Exact probability that the significand of a draw from `density` lands in
/// `interval`, summed over decades with a certified total error at most
/// `tol`.
pub fn exact_interval_prob<D: Density + ?Sized>(
    density: &D,
    interval: &SignificandInterval,
    tol: f64,
) -> Result<Estimate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let base = interval.base();
    let window = decade_window(density, base, 0.5 * tol)?;
    let decades = (window.n_max - window.n_min + 1).max(0) as usize;
    if decades == 0 {
        return Ok(Estimate {
            value: 0.0,
            error_bound: window.certified_tail,
        });
    }
    let per_decade_tol = (0.5 * tol) / decades as f64;
    let mut value = 0.0;
    let mut error_bound = window.certified_tail;
    for n in window.n_min..=window.n_max {
        let lo = mul_pow_base(interval.lo(), base, n);
        let hi = mul_pow_base(interval.hi(), base, n);
        if hi <= lo {
            continue;
        }
        let mass = density.interval_mass(lo, hi, per_decade_tol)?;
        value += mass.value;
        error_bound += mass.error_bound;
    }
    if error_bound > tol {
        return Err(Error::ToleranceNotMet {
            requested: tol,
            achieved: error_bound,
        });
    }
    Ok(Estimate { value, error_bound })
}

/// Exact probability that a draw from `density` has first digit `d`
/// (base 10), with a certified error bound.
pub fn exact_digit_prob<D: Density + ?Sized>(density: &D, d: u32, tol: f64) -> Result<Estimate> {
    let interval = SignificandInterval::new(10, d as f64, d as f64 + 1.0)?;
    exact_interval_prob(density, &interval, tol)
}

/// The criterion value for one digit: `er(d) = P(d) − log₁₀(1 + 1/d)`,
/// carrying the certification of the digit probability.
pub fn error_functional<D: Density + ?Sized>(density: &D, d: u32, tol: f64) -> Result<Estimate> {
    let reference = benford_first_digit(d)?;
    let p = exact_digit_prob(density, d, tol)?;
    Ok(Estimate {
        value: p.value - reference,
        error_bound: p.error_bound,
    })
}

/// Independent evaluation of the same criterion value by quadrature of
/// `f·Δ`: the kernel Δ is piecewise constant on each decade, so the decade
/// splits into at most three constant pieces which are integrated with the
/// generic adaptive rule against the raw pdf.
///
/// This route never touches `interval_mass`, making it a genuine
/// cross-check of [`error_functional`] for closed-form densities.
pub fn error_functional_quadrature<D: Density + ?Sized>(
    density: &D,
    d: u32,
    tol: f64,
) -> Result<Estimate> {
    let reference = benford_first_digit(d)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let window = decade_window(density, 10, 0.5 * tol)?;
    let decades = (window.n_max - window.n_min + 1).max(1) as usize;
    let per_piece_tol = (0.5 * tol) / (3 * decades) as f64;
    let mut value = 0.0;
    // |Δ| < 1, so excluded mass contributes at most the certified tail.
    let mut error_bound = window.certified_tail;
    for n in window.n_min..=window.n_max {
        let decade_lo = pow10(n);
        let digit_lo = mul_pow_base(d as f64, 10, n);
        let digit_hi = mul_pow_base(d as f64 + 1.0, 10, n);
        let decade_hi = pow10(n + 1);
        let pieces = [
            (decade_lo, digit_lo, -reference),
            (digit_lo, digit_hi, 1.0 - reference),
            (digit_hi, decade_hi, -reference),
        ];
        for (lo, hi, kernel) in pieces {
            if hi <= lo {
                continue;
            }
            let est = adaptive_quadrature(
                |x| density.pdf(x),
                lo,
                hi,
                per_piece_tol,
                DEFAULT_QUAD_BUDGET,
            )?;
            value += kernel * est.value;
            error_bound += kernel.abs() * est.error_bound;
        }
    }
    Ok(Estimate { value, error_bound })
}

/// Closed-form criterion value for an exponential density, evaluated as a
/// two-sided series over decades with certified truncation.
///
/// The series is invariant under scaling the rate by ten (the decade index
/// just shifts), so its values over one decade of rates determine them all.
pub fn exponential_er_series(rate: f64, d: u32, tol: f64) -> Result<f64> {
    if !rate.is_finite() || rate <= 0.0 {
        return Err(Error::domain(format!("rate must be positive, got {rate}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let reference = benford_first_digit(d)?;
    let df = d as f64;
    let term = |n: i32| -> f64 {
        let scale = pow10(n);
        (-rate * df * scale).exp() * (-(-rate * scale).exp_m1())
    };
    // Terms decay like λ·10ⁿ downward, so the left tail beyond n is at most
    // λ·10ⁿ·(10/9); upward they decay super-geometrically once λd·10ⁿ ≥ 1.
    let quarter = 0.25 * tol;
    let mut n_min = 0i32;
    loop {
        n_min -= 1;
        if rate * pow10(n_min) * (10.0 / 9.0) <= quarter || n_min < -400 {
            break;
        }
    }
    let mut n_max = 0i32;
    loop {
        let t = term(n_max);
        if (rate * df * pow10(n_max) >= 1.0 && t <= quarter) || n_max > 400 {
            break;
        }
        n_max += 1;
    }
    let mut sum = 0.0;
    for n in n_min..=n_max {
        sum += term(n);
    }
    Ok(sum - reference)
}

/// Criterion values over a grid of exponential rates, plus the envelope.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ErScan {
    pub digit: u32,
    /// `(rate, er)` pairs in grid order.
    pub values: Vec<(f64, f64)>,
    pub max_abs: f64,
}

/// Evaluates [`exponential_er_series`] across a rate grid.
///
/// Because the series is periodic in the decade of the rate, a grid covering
/// one decade (the default is 256 log-spaced rates in `[1, 10)`) already
/// bounds the global envelope.
pub fn er_scan(d: u32, rates: &[f64], tol: f64) -> Result<ErScan> {
    if rates.is_empty() {
        return Err(Error::domain("rate grid must be non-empty"));
    }
    let results = par_map(rates, |&rate| exponential_er_series(rate, d, tol));
    let mut values = Vec::with_capacity(rates.len());
    let mut max_abs = 0.0f64;
    for (rate, res) in rates.iter().zip(results) {
        let er = res?;
        max_abs = max_abs.max(er.abs());
        values.push((*rate, er));
    }
    Ok(ErScan {
        digit: d,
        values,
        max_abs,
    })
}

/// Log-spaced rate grid: `count` points covering `[lo, hi)`.
pub fn log_spaced_rates(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if lo.is_nan() || lo <= 0.0 || hi <= lo || !hi.is_finite() {
        return Err(Error::domain(format!(
            "rate range requires 0 < lo < hi, got [{lo}, {hi})"
        )));
    }
    if count == 0 {
        return Err(Error::domain("rate grid needs at least one point"));
    }
    Ok((0..count)
        .map(|i| lo * (hi / lo).powf(i as f64 / count as f64))
        .collect())
}

/// Both first-digit probabilities for the original and the rescaled density
/// `g(x) = (1/a) f(x/a)`. Exact agreement is expected only when `a` is a
/// power of ten; otherwise the gap is itself a conformance measure.
pub fn scale_invariance_check<D: Density + ?Sized>(
    density: &D,
    factor: f64,
    d: u32,
    tol: f64,
) -> Result<(Estimate, Estimate)> {
    let scaled = crate::density::Scaled::new(density, factor)?;
    let original = exact_digit_prob(density, d, tol)?;
    let rescaled = exact_digit_prob(&scaled, d, tol)?;
    Ok((original, rescaled))
}

/// Criterion values for every digit of the base, with certified bounds.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ErrorReport {
    pub base: u32,
    pub entries: Vec<DigitEr>,
    pub max_abs_er: f64,
    pub tol: f64,
}

/// One digit's worth of an [`ErrorReport`].
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DigitEr {
    pub digit: u32,
    pub probability: f64,
    pub reference: f64,
    pub er: f64,
    pub error_bound: f64,
}

/// A conformance verdict against a threshold on `max |er|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Conforms,
    Violates,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Conforms => write!(f, "CONFORMS"),
            Verdict::Violates => write!(f, "VIOLATES"),
        }
    }
}

/// Evaluates the full per-digit criterion for a density in base 10.
pub fn error_report<D: Density + ?Sized>(density: &D, tol: f64) -> Result<ErrorReport> {
    error_report_base(density, 10, tol)
}

/// Generalized per-digit criterion: first digits `1..base` against the
/// base-`base` reference law. Digits are evaluated in parallel and merged
/// in digit order.
pub fn error_report_base<D: Density + ?Sized>(
    density: &D,
    base: u32,
    tol: f64,
) -> Result<ErrorReport> {
    if base < 2 {
        return Err(Error::domain(format!(
            "base must be at least 2, got {base}"
        )));
    }
    let digits: Vec<u32> = (1..base).collect();
    let rows = par_map(&digits, |&digit| -> Result<DigitEr> {
        let interval = SignificandInterval::new(base, digit as f64, digit as f64 + 1.0)?;
        let reference = benford_interval_prob(&interval);
        let p = exact_interval_prob(density, &interval, tol)?;
        Ok(DigitEr {
            digit,
            probability: p.value,
            reference,
            er: p.value - reference,
            error_bound: p.error_bound,
        })
    });
    let mut entries = Vec::with_capacity(digits.len());
    for row in rows {
        entries.push(row?);
    }
    let max_abs_er = entries.iter().map(|e| e.er.abs()).fold(0.0, f64::max);
    Ok(ErrorReport {
        base,
        entries,
        max_abs_er,
        tol,
    })
}

/// CONFORMS when `max |er| <= threshold`, VIOLATES otherwise.
pub fn conformance_verdict(report: &ErrorReport, threshold: f64) -> Verdict {
    if report.max_abs_er <= threshold {
        Verdict::Conforms
    } else {
        Verdict::Violates
    }
}

/// Per-digit probabilities of a density with their certified bounds.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DigitDistribution {
    pub base: u32,
    /// `(digit, probability, error_bound)` for digits `1..base`.
    pub entries: Vec<(u32, f64, f64)>,
}

/// Exact first-digit distribution of a density in base `base`.
pub fn digit_distribution<D: Density + ?Sized>(
    density: &D,
    base: u32,
    tol: f64,
) -> Result<DigitDistribution> {
    let report = error_report_base(density, base, tol)?;
    Ok(DigitDistribution {
        base,
        entries: report
            .entries
            .iter()
            .map(|e| (e.digit, e.probability, e.error_bound))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{BenfordExact, Exponential, PiecewiseConstant, Uniform};
    use crate::digits::benford_first_digit;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    /// Closed-form decade sum for the exponential first-digit probability,
    /// independent of the interval-mass machinery.
    fn exp_digit_prob_oracle(rate: f64, d: u32) -> f64 {
        let mut sum = 0.0;
        for n in -40..=10i32 {
            let scale = pow10(n);
            sum += (-rate * d as f64 * scale).exp() * (-(-rate * scale).exp_m1());
        }
        sum
    }

    #[test]
    fn window_covers_uniform_support() {
        let u = Uniform::new(1.0, 2.0).unwrap();
        let w = decade_window(&u, 10, 1e-12).unwrap();
        assert!(w.n_min <= 0 && w.n_max >= 0);
        assert_eq!(w.certified_tail, 0.0);
    }

    #[test]
    fn uniform_first_digit_is_one() {
        let u = Uniform::new(1.0, 2.0).unwrap();
        let p = exact_digit_prob(&u, 1, 1e-10).unwrap();
        assert!(close(p.value, 1.0, 1e-12));
        assert_eq!(p.error_bound, 0.0);
        let p9 = exact_digit_prob(&u, 9, 1e-10).unwrap();
        assert_eq!(p9.value, 0.0);
    }

    #[test]
    fn benford_exact_matches_reference_per_digit() {
        let b = BenfordExact::new();
        for d in 1..=9u32 {
            let p = exact_digit_prob(&b, d, 1e-10).unwrap();
            assert!(
                close(p.value, benford_first_digit(d).unwrap(), 1e-12),
                "digit {d}"
            );
        }
    }

    #[test]
    fn benford_exact_interval_probability() {
        let b = BenfordExact::new();
        let iv = SignificandInterval::new(10, 1.5, 3.7).unwrap();
        let p = exact_interval_prob(&b, &iv, 1e-10).unwrap();
        assert!(close(p.value, 0.39211046501131375, 1e-10));
    }

    #[test]
    fn base_two_first_digit_is_always_one() {
        let u = Uniform::new(1.0, 2.0).unwrap();
        let iv = SignificandInterval::new(2, 1.0, 2.0).unwrap();
        let p = exact_interval_prob(&u, &iv, 1e-10).unwrap();
        assert!(close(p.value, 1.0, 1e-12));
    }

    #[test]
    fn exponential_digit_probability_matches_oracle() {
        let e = Exponential::new(1.0).unwrap();
        let p = exact_digit_prob(&e, 1, 1e-8).unwrap();
        let oracle = exp_digit_prob_oracle(1.0, 1);
        // frozen oracle value for rate 1, digit 1
        assert!(close(oracle, 0.329656978330635, 1e-12));
        assert!(close(p.value, oracle, 1e-8));
        assert!(p.error_bound <= 1e-8);
    }

    #[test]
    fn digit_prob_equals_interval_prob() {
        let e = Exponential::new(0.7).unwrap();
        for d in [1u32, 5, 9] {
            let a = exact_digit_prob(&e, d, 1e-9).unwrap();
            let iv = SignificandInterval::new(10, d as f64, d as f64 + 1.0).unwrap();
            let b = exact_interval_prob(&e, &iv, 1e-9).unwrap();
            assert!(close(a.value, b.value, 1e-12));
        }
    }

    #[test]
    fn partition_of_unity_for_fixtures() {
        let exp = Exponential::new(1.0).unwrap();
        let uni = Uniform::new(1.0, 2.0).unwrap();
        let ben = BenfordExact::new();
        let step = PiecewiseConstant::two_block_step();
        let fixtures: [&dyn Density; 4] = [&exp, &uni, &ben, &step];
        for density in fixtures {
            let sum: f64 = (1..=9)
                .map(|d| exact_digit_prob(&density, d, 1e-8).unwrap().value)
                .sum();
            assert!(close(sum, 1.0, 9e-8), "sum {sum}");
        }
    }

    #[test]
    fn error_functional_examples() {
        let u = Uniform::new(1.0, 2.0).unwrap();
        let er = error_functional(&u, 1, 1e-10).unwrap();
        assert!(close(er.value, 0.6989700043360187, 1e-12));

        let b = BenfordExact::new();
        for d in 1..=9u32 {
            let er = error_functional(&b, d, 1e-10).unwrap();
            assert!(er.value.abs() <= 1e-10, "digit {d}: {}", er.value);
        }

        let e = Exponential::new(1.0).unwrap();
        let er = error_functional(&e, 1, 1e-8).unwrap();
        assert!(close(er.value, 0.028626982666653, 1e-8));
        assert!(er.value.abs() <= 0.03);
    }

    #[test]
    fn series_matches_reference_subtraction() {
        for rate in [0.1, 1.0, 10.0] {
            for d in 1..=9u32 {
                let series = exponential_er_series(rate, d, 1e-12).unwrap();
                let oracle = exp_digit_prob_oracle(rate, d) - benford_first_digit(d).unwrap();
                assert!(
                    close(series, oracle, 1e-12),
                    "rate {rate} digit {d}: {series} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn series_decade_periodicity() {
        for (i, d) in [(3u32, 1u32), (7, 4), (11, 9)] {
            let rate = 1.3 + i as f64 * 0.41;
            let a = exponential_er_series(rate, d, 1e-13).unwrap();
            let b = exponential_er_series(10.0 * rate, d, 1e-13).unwrap();
            assert!(close(a, b, 1e-12), "rate {rate} digit {d}");
        }
    }

    #[test]
    fn dual_route_agreement() {
        let e = Exponential::new(1.0).unwrap();
        let subtraction = error_functional(&e, 1, 1e-8).unwrap();
        let quadrature = error_functional_quadrature(&e, 1, 1e-8).unwrap();
        assert!(
            (subtraction.value - quadrature.value).abs()
                <= subtraction.error_bound + quadrature.error_bound,
            "{} vs {}",
            subtraction.value,
            quadrature.value
        );
    }

    #[test]
    fn scan_envelope_within_bound() {
        let rates = log_spaced_rates(1.0, 10.0, 64).unwrap();
        let scan = er_scan(1, &rates, 1e-12).unwrap();
        assert_eq!(scan.values.len(), 64);
        assert!(scan.max_abs <= 0.03);
        let single = er_scan(1, &[1.0], 1e-12).unwrap();
        assert_eq!(single.values.len(), 1);
        assert!(close(
            single.values[0].1,
            exponential_er_series(1.0, 1, 1e-12).unwrap(),
            0.0
        ));
    }

    #[test]
    fn dual_route_agreement_reference_density() {
        let b = BenfordExact::new();
        for d in [1u32, 5, 9] {
            let subtraction = error_functional(&b, d, 1e-8).unwrap();
            let quadrature = error_functional_quadrature(&b, d, 1e-8).unwrap();
            assert!(
                (subtraction.value - quadrature.value).abs()
                    <= subtraction.error_bound + quadrature.error_bound
            );
        }
    }

    #[test]
    fn dual_route_agreement_discontinuous_density() {
        // the quadrature route must also survive pdf jumps inside a piece
        let u = Uniform::new(1.0, 2.0).unwrap();
        let subtraction = error_functional(&u, 1, 1e-8).unwrap();
        let quadrature = error_functional_quadrature(&u, 1, 1e-8).unwrap();
        assert!(close(subtraction.value, 0.6989700043360187, 1e-10));
        assert!(
            (subtraction.value - quadrature.value).abs()
                <= subtraction.error_bound + quadrature.error_bound
        );
    }

    #[test]
    fn digit_distribution_matches_report() {
        let e = Exponential::new(1.0).unwrap();
        let dist = digit_distribution(&e, 10, 1e-9).unwrap();
        assert_eq!(dist.entries.len(), 9);
        let sum: f64 = dist.entries.iter().map(|(_, p, _)| p).sum();
        assert!(close(sum, 1.0, 9e-9));
        let (digit, p, bound) = dist.entries[0];
        assert_eq!(digit, 1);
        let direct = exact_digit_prob(&e, 1, 1e-9).unwrap();
        assert!(close(p, direct.value, 1e-12));
        assert!(bound <= 1e-9);
    }

    #[test]
    fn generic_factor_preserves_conforming_density() {
        // a conforming density keeps its digit distribution under any scale
        let b = BenfordExact::new();
        let tol = 1e-9;
        for d in 1..=9u32 {
            let (p, q) = scale_invariance_check(&b, 3.7, d, tol).unwrap();
            assert!(
                close(p.value, q.value, 2.0 * tol),
                "digit {d}: {} vs {}",
                p.value,
                q.value
            );
        }
    }

    #[test]
    fn scale_invariance_decade_and_generic() {
        let e = Exponential::new(1.0).unwrap();
        let (p, q) = scale_invariance_check(&e, 10.0, 3, 1e-9).unwrap();
        assert!(close(p.value, q.value, 2e-9));

        let u = Uniform::new(1.0, 2.0).unwrap();
        let (p, q) = scale_invariance_check(&u, 5.0, 1, 1e-10).unwrap();
        assert!(close(p.value, 1.0, 1e-12));
        assert!(close(q.value, 0.0, 1e-12));
    }

    #[test]
    fn verdicts() {
        let b = BenfordExact::new();
        let report = error_report(&b, 1e-9).unwrap();
        assert_eq!(
            conformance_verdict(&report, DEFAULT_THRESHOLD),
            Verdict::Conforms
        );

        let u = Uniform::new(1.0, 2.0).unwrap();
        let report = error_report(&u, 1e-9).unwrap();
        assert_eq!(
            conformance_verdict(&report, DEFAULT_THRESHOLD),
            Verdict::Violates
        );
        assert!(close(report.max_abs_er, 0.6989700043360187, 1e-11));

        let e = Exponential::new(1.0).unwrap();
        let report = error_report(&e, 1e-8).unwrap();
        assert_eq!(
            conformance_verdict(&report, DEFAULT_THRESHOLD),
            Verdict::Conforms
        );
    }

    #[test]
    fn report_errors_sum_to_zero() {
        let e = Exponential::new(2.5).unwrap();
        let report = error_report(&e, 1e-9).unwrap();
        let sum: f64 = report.entries.iter().map(|r| r.er).sum();
        let bound: f64 = report.entries.iter().map(|r| r.error_bound).sum();
        assert!(sum.abs() <= bound.max(1e-12), "sum {sum} bound {bound}");
    }

    #[test]
    fn invalid_arguments_are_domain_errors() {
        let e = Exponential::new(1.0).unwrap();
        assert!(exact_digit_prob(&e, 0, 1e-9).is_err());
        assert!(exact_digit_prob(&e, 10, 1e-9).is_err());
        assert!(exact_digit_prob(&e, 1, 0.0).is_err());
        assert!(exponential_er_series(-1.0, 1, 1e-9).is_err());
        assert!(exponential_er_series(1.0, 0, 1e-9).is_err());
        assert!(er_scan(1, &[], 1e-9).is_err());
        assert!(log_spaced_rates(0.0, 1.0, 4).is_err());
        assert!(log_spaced_rates(1.0, 10.0, 0).is_err());
    }
}
