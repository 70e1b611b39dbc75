//! Dataset-side digit analysis for audit screening.
//!
//! Values are classified by their leading digits, counted per pattern, and
//! tested against the logarithmic reference frequencies with a Pearson
//! chi-square statistic and the mean absolute deviation of frequencies.
//! Non-positive and non-finite inputs are excluded (and tallied), not fatal:
//! real ledgers contain zeros.
//!
//! Critical values are shipped as configuration data (degrees of freedom
//! 1..=99 at the 5% and 1% significance levels) rather than computed at
//! run time, so no statistics dependency is required.

use std::collections::BTreeMap;

use crate::density::Density;
use crate::digits::{benford_pattern_prob, leading_digits, DigitPattern};
use crate::error::{Error, Result};

pub use crate::conformance::Verdict;

/// Upper-percentage points of the chi-square distribution at significance
/// 0.05, indexed by `dof - 1` for `dof = 1..=99`.
pub const CHI_SQUARE_CRITICAL_05: [f64; 99] = [
    3.841459, 5.991465, 7.814728, 9.487729, 11.070498, 12.591587, 14.067140, 15.507313, 16.918978,
    18.307038, 19.675138, 21.026070, 22.362032, 23.684791, 24.995790, 26.296228, 27.587112,
    28.869299, 30.143527, 31.410433, 32.670573, 33.924438, 35.172462, 36.415029, 37.652484,
    38.885139, 40.113272, 41.337138, 42.556968, 43.772972, 44.985343, 46.194260, 47.399884,
    48.602367, 49.801850, 50.998460, 52.192320, 53.383541, 54.572228, 55.758479, 56.942387,
    58.124038, 59.303512, 60.480887, 61.656233, 62.829620, 64.001112, 65.170769, 66.338649,
    67.504807, 68.669294, 69.832160, 70.993453, 72.153216, 73.311493, 74.468324, 75.623748,
    76.777803, 77.930524, 79.081944, 80.232098, 81.381015, 82.528727, 83.675261, 84.820645,
    85.964907, 87.108072, 88.250164, 89.391208, 90.531225, 91.670239, 92.808270, 93.945340,
    95.081467, 96.216671, 97.350970, 98.484383, 99.616927, 100.748619, 101.879474, 103.009509,
    104.138738, 105.267177, 106.394840, 107.521741, 108.647893, 109.773309, 110.898003, 112.021986,
    113.145270, 114.267868, 115.389790, 116.511047, 117.631651, 118.751612, 119.870939, 120.989644,
    122.107735, 123.225221,
];

/// Upper-percentage points of the chi-square distribution at significance
/// 0.01, indexed by `dof - 1` for `dof = 1..=99`.
pub const CHI_SQUARE_CRITICAL_01: [f64; 99] = [
    6.634897, 9.210340, 11.344867, 13.276704, 15.086272, 16.811894, 18.475307, 20.090235,
    21.665994, 23.209251, 24.724970, 26.216967, 27.688250, 29.141238, 30.577914, 31.999927,
    33.408664, 34.805306, 36.190869, 37.566235, 38.932173, 40.289360, 41.638398, 42.979820,
    44.314105, 45.641683, 46.962942, 48.278236, 49.587884, 50.892181, 52.191395, 53.485772,
    54.775540, 56.060909, 57.342073, 58.619215, 59.892500, 61.162087, 62.428121, 63.690740,
    64.950071, 66.206236, 67.459348, 68.709513, 69.956832, 71.201400, 72.443307, 73.682639,
    74.919474, 76.153891, 77.385962, 78.615756, 79.843338, 81.068772, 82.292117, 83.513430,
    84.732766, 85.950176, 87.165711, 88.379419, 89.591344, 90.801532, 92.010024, 93.216860,
    94.422079, 95.625719, 96.827816, 98.028403, 99.227515, 100.425184, 101.621441, 102.816314,
    104.009834, 105.202028, 106.392923, 107.582545, 108.770919, 109.958069, 111.144019, 112.328793,
    113.512410, 114.694895, 115.876266, 117.056544, 118.235749, 119.413900, 120.591015, 121.767111,
    122.942207, 124.116319, 125.289463, 126.461656, 127.632913, 128.803249, 129.972679, 131.141217,
    132.308877, 133.475672, 134.641617,
];

/// Significance level of the shipped critical-value tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Alpha {
    /// 5% significance.
    FivePercent,
    /// 1% significance.
    OnePercent,
}

impl Alpha {
    pub fn value(&self) -> f64 {
        match self {
            Alpha::FivePercent => 0.05,
            Alpha::OnePercent => 0.01,
        }
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0.05" | "5%" => Ok(Alpha::FivePercent),
            "0.01" | "1%" => Ok(Alpha::OnePercent),
            other => Err(Error::parse(format!(
                "unsupported significance level {other:?} (use 0.05 or 0.01)"
            ))),
        }
    }
}

/// Critical value for the Pearson statistic at the given degrees of freedom.
pub fn chi_square_critical(dof: usize, alpha: Alpha) -> Result<f64> {
    let table = match alpha {
        Alpha::FivePercent => &CHI_SQUARE_CRITICAL_05,
        Alpha::OnePercent => &CHI_SQUARE_CRITICAL_01,
    };
    if dof == 0 || dof > table.len() {
        return Err(Error::domain(format!(
            "critical-value table covers dof 1..={}, got {dof}",
            table.len()
        )));
    }
    Ok(table[dof - 1])
}

/// Verdict policy for dataset analysis: the chi-square statistic gates the
/// verdict at the configured significance.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SignificancePolicy {
    pub alpha: Alpha,
}

impl Default for SignificancePolicy {
    fn default() -> Self {
        SignificancePolicy {
            alpha: Alpha::OnePercent,
        }
    }
}

/// Leading-digit pattern counts for a dataset.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DigitCounts {
    pub base: u32,
    pub pattern_len: usize,
    /// Observed count per leading-digit pattern; patterns never observed are
    /// absent.
    counts: BTreeMap<Vec<u32>, u64>,
    /// Number of classified values.
    pub total: u64,
    /// Non-positive or non-finite inputs, excluded from classification.
    pub excluded: u64,
}

impl DigitCounts {
    pub fn get(&self, pattern: &[u32]) -> u64 {
        self.counts.get(pattern).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.counts.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    /// Every admissible pattern for this base and length, in lexicographic
    /// order, with its reference probability.
    pub fn expected_patterns(&self) -> Result<Vec<(Vec<u32>, f64)>> {
        let m = self.base as u64;
        let count = (m - 1) * m.pow(self.pattern_len as u32 - 1);
        if count > 1_000_000 {
            return Err(Error::domain(format!(
                "pattern space too large: {count} patterns"
            )));
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u32; self.pattern_len];
        digits[0] = 1;
        loop {
            let pattern = DigitPattern::new(self.base, digits.clone())?;
            out.push((digits.clone(), benford_pattern_prob(&pattern)));
            // lexicographic increment
            let mut pos = self.pattern_len;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                digits[pos] += 1;
                let limit = self.base;
                let floor = if pos == 0 { 1 } else { 0 };
                if digits[pos] < limit {
                    break;
                }
                digits[pos] = floor;
            }
        }
    }
}

/// Counts leading-digit patterns of length `k` in base `base`.
///
/// Values that cannot carry a digit pattern (zero, negatives, NaN,
/// infinities) are excluded and tallied, never fatal.
pub fn count_digits(values: &[f64], base: u32, k: usize) -> Result<DigitCounts> {
    if base < 2 {
        return Err(Error::domain(format!(
            "base must be at least 2, got {base}"
        )));
    }
    if k == 0 {
        return Err(Error::domain("pattern length must be at least 1"));
    }
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut total = 0u64;
    let mut excluded = 0u64;
    for &value in values {
        if !value.is_finite() || value <= 0.0 {
            excluded += 1;
            continue;
        }
        let digits = leading_digits(value, base, k)?;
        *counts.entry(digits).or_insert(0) += 1;
        total += 1;
    }
    Ok(DigitCounts {
        base,
        pattern_len: k,
        counts,
        total,
        excluded,
    })
}

/// Pearson goodness-of-fit statistic of the observed pattern counts against
/// the reference law, with its degrees of freedom (pattern count − 1).
pub fn chi_square(counts: &DigitCounts) -> Result<(f64, usize)> {
    if counts.total == 0 {
        return Err(Error::EmptyDataset {
            excluded: counts.excluded as usize,
        });
    }
    let n = counts.total as f64;
    let patterns = counts.expected_patterns()?;
    let mut statistic = 0.0;
    for (pattern, p) in &patterns {
        let expected = n * p;
        let observed = counts.get(pattern) as f64;
        let diff = observed - expected;
        statistic += diff * diff / expected;
    }
    Ok((statistic, patterns.len() - 1))
}

/// Mean absolute deviation of observed pattern frequencies from the
/// reference frequencies.
pub fn mad(counts: &DigitCounts) -> Result<f64> {
    if counts.total == 0 {
        return Err(Error::EmptyDataset {
            excluded: counts.excluded as usize,
        });
    }
    let n = counts.total as f64;
    let patterns = counts.expected_patterns()?;
    let sum: f64 = patterns
        .iter()
        .map(|(pattern, p)| (counts.get(pattern) as f64 / n - p).abs())
        .sum();
    Ok(sum / patterns.len() as f64)
}

/// Monte Carlo estimate of a first-digit probability: the fraction of `n`
/// draws with first digit `d`, plus the binomial standard error
/// `sqrt(p̂(1−p̂)/n)`.
pub fn monte_carlo_digit_freq<D: Density + ?Sized>(
    density: &D,
    n: usize,
    seed: u64,
    d: u32,
) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    if !(1..=9).contains(&d) {
        return Err(Error::domain(format!(
            "first digit must be in 1..=9, got {d}"
        )));
    }
    let samples = density.sample(n, seed)?;
    let mut hits = 0u64;
    for value in samples {
        if value > 0.0 && value.is_finite() && leading_digits(value, 10, 1)?[0] == d {
            hits += 1;
        }
    }
    let freq = hits as f64 / n as f64;
    let std_error = (freq * (1.0 - freq) / n as f64).sqrt();
    Ok((freq, std_error))
}

/// One row of a [`ConformanceReport`]: a pattern with its observed count and
/// the observed/expected frequencies.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PatternRow {
    pub pattern: Vec<u32>,
    pub observed: u64,
    pub observed_freq: f64,
    pub expected_freq: f64,
}

/// Full dataset screening result.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConformanceReport {
    pub base: u32,
    pub pattern_len: usize,
    pub total: u64,
    pub excluded: u64,
    pub rows: Vec<PatternRow>,
    pub chi_square: f64,
    pub dof: usize,
    pub chi_square_critical: f64,
    pub alpha: f64,
    pub mad: f64,
    pub verdict: Verdict,
}

/// Counts, tests, and judges a dataset in one pass.
///
/// The verdict is policy-driven: CONFORMS when the chi-square statistic
/// stays below the critical value at the policy's significance level. What
/// deviation constitutes fraud is a policy question; the report carries the
/// evidence either way.
pub fn analyze_dataset(
    values: &[f64],
    base: u32,
    k: usize,
    policy: SignificancePolicy,
) -> Result<ConformanceReport> {
    let counts = count_digits(values, base, k)?;
    if counts.total == 0 {
        return Err(Error::EmptyDataset {
            excluded: counts.excluded as usize,
        });
    }
    let (statistic, dof) = chi_square(&counts)?;
    let critical = chi_square_critical(dof, policy.alpha)?;
    let mad_value = mad(&counts)?;
    let n = counts.total as f64;
    let rows = counts
        .expected_patterns()?
        .into_iter()
        .map(|(pattern, p)| {
            let observed = counts.get(&pattern);
            PatternRow {
                pattern,
                observed,
                observed_freq: observed as f64 / n,
                expected_freq: p,
            }
        })
        .collect();
    let verdict = if statistic <= critical {
        Verdict::Conforms
    } else {
        Verdict::Violates
    };
    Ok(ConformanceReport {
        base,
        pattern_len: k,
        total: counts.total,
        excluded: counts.excluded,
        rows,
        chi_square: statistic,
        dof,
        chi_square_critical: critical,
        alpha: policy.alpha.value(),
        mad: mad_value,
        verdict,
    })
}
