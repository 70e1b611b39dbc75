//! Exact significant-digit arithmetic and the closed-form logarithmic
//! reference laws.
//!
//! Everything here is a pure function of its inputs. Digit classification
//! follows a single half-open convention: a positive number `x` has first
//! digit `d` (base 10) when `x ∈ [d·10ⁿ, (d+1)·10ⁿ)` for some integer `n`,
//! with the lower endpoint included. For base 10 the classification of an
//! `f64` is read off its shortest round-trip decimal representation, so
//! values entered as decimal text (`1000.0`, `0.00712`) are never
//! misclassified by binary rounding adjacent to powers of ten.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Natural log of the base, using the correctly rounded constant where one
/// exists so that reference probabilities are bit-identical across code paths.
pub(crate) fn ln_base(base: u32) -> f64 {
    match base {
        2 => std::f64::consts::LN_2,
        10 => std::f64::consts::LN_10,
        b => (b as f64).ln(),
    }
}

// ---------------------------------------------------------------------------
// Powers of ten and scaling helpers
// ---------------------------------------------------------------------------

const POW10_MIN: i32 = -342;
const POW10_MAX: i32 = 308;

fn pow10_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // The stdlib decimal parser is correctly rounded, which makes every
        // table entry the nearest f64 to the exact power of ten.
        (POW10_MIN..=POW10_MAX)
            .map(|n| format!("1e{n}").parse::<f64>().expect("power of ten"))
            .collect()
    })
}

/// Correctly rounded `10^n`, saturating to `0.0` / `inf` outside f64 range.
pub(crate) fn pow10(n: i32) -> f64 {
    if n < POW10_MIN {
        0.0
    } else if n > POW10_MAX {
        f64::INFINITY
    } else {
        pow10_table()[(n - POW10_MIN) as usize]
    }
}

/// `x / 10^n` in a single rounding step whenever `10^n` is a normal f64.
pub(crate) fn div_pow10(x: f64, n: i32) -> f64 {
    if (-307..=308).contains(&n) {
        x / pow10(n)
    } else if n < -307 {
        (x * pow10(154)) * pow10(-n - 154)
    } else {
        (x / pow10(308)) / pow10(n - 308)
    }
}

/// `x * 10^n`, mirroring the factorization of [`div_pow10`] so that
/// decompose-then-recompose round-trips to within 1 ulp.
pub(crate) fn mul_pow10(x: f64, n: i32) -> f64 {
    if (-307..=308).contains(&n) {
        x * pow10(n)
    } else if n < -307 {
        (x / pow10(154)) / pow10(-n - 154)
    } else {
        (x * pow10(308)) * pow10(n - 308)
    }
}

/// `x * base^n` for an arbitrary base, splitting the exponent only when the
/// scale factor leaves the normal f64 range.
pub(crate) fn mul_pow_base(x: f64, base: u32, n: i32) -> f64 {
    if base == 10 {
        return mul_pow10(x, n);
    }
    if n == 0 {
        return x;
    }
    let p = (base as f64).powi(n);
    if p.is_finite() && p >= f64::MIN_POSITIVE {
        x * p
    } else {
        let h = n / 2;
        mul_pow_base(mul_pow_base(x, base, h), base, n - h)
    }
}

/// `x / base^n`, mirroring [`mul_pow_base`].
pub(crate) fn div_pow_base(x: f64, base: u32, n: i32) -> f64 {
    if base == 10 {
        return div_pow10(x, n);
    }
    if n == 0 {
        return x;
    }
    let p = (base as f64).powi(n);
    if p.is_finite() && p >= f64::MIN_POSITIVE {
        x / p
    } else {
        let h = n / 2;
        div_pow_base(div_pow_base(x, base, h), base, n - h)
    }
}

fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        return Err(Error::domain(format!(
            "base must be at least 2, got {base}"
        )));
    }
    Ok(())
}

fn check_positive(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "value must be a finite positive number, got {x}"
        )));
    }
    Ok(())
}

fn check_digit(d: u32) -> Result<()> {
    if !(1..=9).contains(&d) {
        return Err(Error::domain(format!(
            "first digit must be in 1..=9, got {d}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// A leading-digit sequence in some base: the event "the first `k` digits of
/// the significand are `d₁..d_k`".
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DigitPattern {
    base: u32,
    digits: Vec<u32>,
    /// `Σ dᵢ·base^(k−i)`; the pattern covers significands in `[floor, floor+1)`
    /// after scaling by `base^(k−1)`.
    floor: u64,
}

impl DigitPattern {
    /// Validates the digit sequence: non-empty, first digit nonzero, every
    /// digit below the base, and the induced integer exactly representable.
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        check_base(base)?;
        let Some(&first) = digits.first() else {
            return Err(Error::domain("digit pattern must be non-empty"));
        };
        if first == 0 || first >= base {
            return Err(Error::domain(format!(
                "leading digit must be in 1..{base}, got {first}"
            )));
        }
        for &d in &digits[1..] {
            if d >= base {
                return Err(Error::domain(format!(
                    "digit {d} out of range for base {base}"
                )));
            }
        }
        let mut floor: u64 = 0;
        for &d in &digits {
            floor = floor
                .checked_mul(base as u64)
                .and_then(|v| v.checked_add(d as u64))
                .filter(|&v| v <= (1u64 << 53))
                .ok_or_else(|| Error::domain("digit pattern too long for exact arithmetic"))?;
        }
        Ok(DigitPattern {
            base,
            digits,
            floor,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// The integer `Σ dᵢ·base^(k−i)` spelled by the pattern.
    pub fn significand_floor(&self) -> u64 {
        self.floor
    }
}

impl std::fmt::Display for DigitPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 && self.base > 10 {
                write!(f, ".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A half-open significand interval `[lo, hi)` inside `[1, base)`,
/// identifying the event "the significand of `x` lies in `[lo, hi)`".
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SignificandInterval {
    base: u32,
    lo: f64,
    hi: f64,
}

impl SignificandInterval {
    pub fn new(base: u32, lo: f64, hi: f64) -> Result<Self> {
        check_base(base)?;
        if !lo.is_finite() || !hi.is_finite() || lo < 1.0 || hi <= lo || hi > base as f64 {
            return Err(Error::domain(format!(
                "significand interval requires 1 <= lo < hi <= {base}, got [{lo}, {hi})"
            )));
        }
        Ok(SignificandInterval { base, lo, hi })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

/// The base-`m` scientific decomposition `x = significand · m^exponent`
/// with `significand ∈ [1, m)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SignificandDecomposition {
    pub significand: f64,
    pub exponent: i32,
}

impl SignificandDecomposition {
    /// Recomposes `significand · base^exponent`, reproducing the decomposed
    /// value to within 1 ulp.
    pub fn value(&self, base: u32) -> f64 {
        mul_pow_base(self.significand, base, self.exponent)
    }
}

// ---------------------------------------------------------------------------
// Reference laws
// ---------------------------------------------------------------------------

/// `log_base(1 + 1/floor)` via `ln_1p`, which keeps full precision for
/// large floors such as the pattern 9-9-9.
fn log_prob(floor: f64, base: u32) -> f64 {
    (1.0 / floor).ln_1p() / ln_base(base)
}

/// First-digit reference probability `log₁₀(1 + 1/d)`.
pub fn benford_first_digit(d: u32) -> Result<f64> {
    check_digit(d)?;
    Ok(log_prob(d as f64, 10))
}

/// Reference probability of a leading-digit pattern:
/// `log_base(1 + 1/a)` with `a = Σ dᵢ·base^(k−i)`.
///
/// For `k = 1`, base 10, this takes the same code path as
/// [`benford_first_digit`], so the two agree bit-for-bit.
pub fn benford_pattern_prob(pattern: &DigitPattern) -> f64 {
    log_prob(pattern.significand_floor() as f64, pattern.base())
}

/// Reference probability of a significand interval: `log_base(hi/lo)`.
pub fn benford_interval_prob(interval: &SignificandInterval) -> f64 {
    ((interval.hi - interval.lo) / interval.lo).ln_1p() / ln_base(interval.base)
}

// ---------------------------------------------------------------------------
// Digit extraction
// ---------------------------------------------------------------------------

/// Decomposes `x = k · base^n` with `k ∈ [1, base)`.
///
/// Scaling happens in a single division by a correctly rounded power
/// whenever that power is a normal f64, so recomposition reproduces `x` to
/// within 1 ulp across the full exponent range, and `x = base^n` yields
/// `k = 1` exactly.
pub fn significand_decompose(x: f64, base: u32) -> Result<SignificandDecomposition> {
    check_positive(x)?;
    check_base(base)?;
    let b = base as f64;
    let mut n = (x.ln() / ln_base(base)).floor() as i32;
    for _ in 0..64 {
        let k = div_pow_base(x, base, n);
        if k < 1.0 {
            n -= 1;
        } else if k >= b {
            n += 1;
        } else {
            // Prefer the larger exponent when x also clears base^(n+1):
            // x equal to a rounded power of the base then lands on k = 1
            // exactly rather than on k just below the base.
            let up = div_pow_base(x, base, n + 1);
            if (1.0..b).contains(&up) {
                return Ok(SignificandDecomposition {
                    significand: up,
                    exponent: n + 1,
                });
            }
            return Ok(SignificandDecomposition {
                significand: k,
                exponent: n,
            });
        }
    }
    Err(Error::domain(format!(
        "significand normalization did not converge for {x} in base {base}"
    )))
}

/// Leading digits of the shortest round-trip decimal representation.
fn decimal_leading_digits(x: f64, count: usize) -> Vec<u32> {
    let repr = format!("{x}");
    let mut digits = Vec::with_capacity(count);
    let mut significant = false;
    for byte in repr.bytes() {
        match byte {
            b'1'..=b'9' => {
                significant = true;
                digits.push(u32::from(byte - b'0'));
            }
            b'0' => {
                if significant {
                    digits.push(0);
                }
            }
            b'.' => {}
            // mantissa digits end at an exponent marker
            b'e' | b'E' => break,
            _ => {}
        }
        if digits.len() == count {
            return digits;
        }
    }
    digits.resize(count, 0);
    digits
}

/// The first `count` base-`base` digits of the significand of `x`.
///
/// For base 10 the digits are read from the shortest round-trip decimal
/// representation of `x`, so values adjacent to powers of ten classify the
/// way they read as decimal text.
pub fn leading_digits(x: f64, base: u32, count: usize) -> Result<Vec<u32>> {
    check_positive(x)?;
    check_base(base)?;
    if count == 0 {
        return Err(Error::domain("digit count must be at least 1"));
    }
    if base == 10 {
        return Ok(decimal_leading_digits(x, count));
    }
    let decomposition = significand_decompose(x, base)?;
    let mut significand = decomposition.significand;
    let b = base as f64;
    let mut digits = Vec::with_capacity(count);
    for _ in 0..count {
        let d = significand.floor().min(b - 1.0).max(0.0);
        digits.push(d as u32);
        significand = (significand - d) * b;
    }
    Ok(digits)
}

/// Whether `x` lies in `S(d) = ⋃ₙ [d·10ⁿ, (d+1)·10ⁿ)` — that is, whether
/// the first significant digit of `x` is `d`. Lower endpoints are included,
/// upper endpoints excluded.
pub fn digit_indicator(x: f64, d: u32) -> Result<bool> {
    check_positive(x)?;
    check_digit(d)?;
    Ok(decimal_leading_digits(x, 1)[0] == d)
}

/// The oscillating kernel of the conformance criterion:
/// indicator of `S(d)` minus the reference probability `log₁₀(1 + 1/d)`.
///
/// Values lie in `[−log₁₀(1+1/d), 1 − log₁₀(1+1/d)]`.
pub fn delta(x: f64, d: u32) -> Result<f64> {
    let indicator = digit_indicator(x, d)?;
    Ok(if indicator { 1.0 } else { 0.0 } - log_prob(d as f64, 10))
}
