//! Probability densities on the positive reals.
//!
//! A [`Density`] exposes pointwise evaluation, interval masses with
//! certified error bounds, and a certified bound on the mass living outside
//! `[1/t, t]`. Closed-form densities report zero numerical error; anything
//! else falls back to adaptive quadrature of the pdf. Densities are
//! immutable after construction and safe to share across threads; samplers
//! take an explicit seed, so there is no hidden mutable state.

mod piecewise;

pub use piecewise::{approximate_piecewise_linear, PiecewiseLinear};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_quadrature, DEFAULT_QUAD_BUDGET};
use crate::Estimate;

/// Default tolerance for interval masses when the caller has no opinion.
pub const DEFAULT_TOL: f64 = 1e-10;

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Validates interval-mass arguments. Returns `Ok(Some(..))` with the
/// trivial answer for empty intervals.
pub(crate) fn validate_interval(lo: f64, hi: f64, tol: f64) -> Result<Option<Estimate>> {
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::domain("interval bounds must not be NaN"));
    }
    if lo < 0.0 {
        return Err(Error::domain(format!(
            "interval start must be >= 0, got {lo}"
        )));
    }
    if hi < lo {
        return Err(Error::domain(format!("inverted interval [{lo}, {hi})")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if lo == hi {
        return Ok(Some(Estimate {
            value: 0.0,
            error_bound: 0.0,
        }));
    }
    Ok(None)
}

/// A probability density `f` on the positive reals.
pub trait Density: Send + Sync {
    /// Density value at `x` (per unit `x`); zero outside the support.
    fn pdf(&self, x: f64) -> f64;

    /// Mass of `[lo, hi)` with a certified error bound no larger than `tol`.
    ///
    /// Closed-form densities return a zero bound. The default implementation
    /// integrates the pdf adaptively and requires finite bounds.
    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        if !hi.is_finite() {
            return Err(Error::domain(
                "this density supports only finite integration bounds",
            ));
        }
        adaptive_quadrature(|x| self.pdf(x), lo, hi, tol, DEFAULT_QUAD_BUDGET)
    }

    /// Upper bound on the mass outside `[1/t, t]`, for `t >= 1`.
    fn tail_mass(&self, t: f64) -> f64;

    /// Draws `n` values, reproducibly for a fixed seed.
    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let _ = (n, seed);
        Err(Error::SamplerUnsupported)
    }

    /// Identity hook used by the piecewise-linear approximation machinery.
    fn as_piecewise_linear(&self) -> Option<&PiecewiseLinear> {
        None
    }
}

impl<D: Density + ?Sized> Density for &D {
    fn pdf(&self, x: f64) -> f64 {
        (**self).pdf(x)
    }
    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        (**self).interval_mass(lo, hi, tol)
    }
    fn tail_mass(&self, t: f64) -> f64 {
        (**self).tail_mass(t)
    }
    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        (**self).sample(n, seed)
    }
    fn as_piecewise_linear(&self) -> Option<&PiecewiseLinear> {
        (**self).as_piecewise_linear()
    }
}

impl Density for Box<dyn Density> {
    fn pdf(&self, x: f64) -> f64 {
        (**self).pdf(x)
    }
    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        (**self).interval_mass(lo, hi, tol)
    }
    fn tail_mass(&self, t: f64) -> f64 {
        (**self).tail_mass(t)
    }
    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        (**self).sample(n, seed)
    }
    fn as_piecewise_linear(&self) -> Option<&PiecewiseLinear> {
        (**self).as_piecewise_linear()
    }
}

// ---------------------------------------------------------------------------
// Uniform
// ---------------------------------------------------------------------------

/// Constant density on `[lo, hi)` — the canonical narrow, non-conforming
/// distribution.
#[derive(Debug, Clone, Copy)]
pub struct Uniform {
    lo: f64,
    hi: f64,
}

impl Uniform {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi <= lo {
            return Err(Error::domain(format!(
                "uniform support requires 0 < lo < hi, got [{lo}, {hi})"
            )));
        }
        Ok(Uniform { lo, hi })
    }

    fn cdf(&self, x: f64) -> f64 {
        ((x - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
    }
}

impl Density for Uniform {
    fn pdf(&self, x: f64) -> f64 {
        if x >= self.lo && x < self.hi {
            1.0 / (self.hi - self.lo)
        } else {
            0.0
        }
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        Ok(Estimate {
            value: self.cdf(hi) - self.cdf(lo),
            error_bound: 0.0,
        })
    }

    fn tail_mass(&self, t: f64) -> f64 {
        self.cdf(1.0 / t) + (1.0 - self.cdf(t))
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = seeded_rng(seed);
        let width = self.hi - self.lo;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let v = self.lo + rng.gen::<f64>() * width;
            if v >= self.lo && v < self.hi {
                out.push(v);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Exponential
// ---------------------------------------------------------------------------

/// `f(x) = λ e^(−λx)` on the positive reals.
#[derive(Debug, Clone, Copy)]
pub struct Exponential {
    rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::domain(format!("rate must be positive, got {rate}")));
        }
        Ok(Exponential { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// `e^(−λ·lo) − e^(−λ·hi)` in a cancellation-free form.
    fn mass(&self, lo: f64, hi: f64) -> f64 {
        if hi.is_finite() {
            (-self.rate * lo).exp() * (-(-self.rate * (hi - lo)).exp_m1())
        } else {
            (-self.rate * lo).exp()
        }
    }
}

impl Density for Exponential {
    fn pdf(&self, x: f64) -> f64 {
        if x > 0.0 {
            self.rate * (-self.rate * x).exp()
        } else {
            0.0
        }
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        Ok(Estimate {
            value: self.mass(lo, hi),
            error_bound: 0.0,
        })
    }

    fn tail_mass(&self, t: f64) -> f64 {
        // below 1/t: 1 − e^(−λ/t);  above t: e^(−λt)
        (-(-self.rate / t).exp_m1()) + (-self.rate * t).exp()
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = seeded_rng(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let u: f64 = rng.gen();
            let v = -(1.0 - u).ln() / self.rate;
            if v > 0.0 {
                out.push(v);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Exponential mixture
// ---------------------------------------------------------------------------

/// Finite positive superposition of exponentials:
/// `f(x) = Σ cᵢ · tᵢ e^(−tᵢ x)` with `cᵢ ≥ 0`, `Σ cᵢ = 1`.
#[derive(Debug, Clone)]
pub struct ExponentialMixture {
    /// `(weight, rate)` pairs with weights normalized to sum to one.
    components: Vec<(f64, f64)>,
}

impl ExponentialMixture {
    pub fn new(components: &[(f64, f64)]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("mixture needs at least one component"));
        }
        let mut total = 0.0;
        for &(weight, rate) in components {
            if !weight.is_finite() || weight < 0.0 {
                return Err(Error::domain(format!(
                    "mixture weights must be nonnegative, got {weight}"
                )));
            }
            if !rate.is_finite() || rate <= 0.0 {
                return Err(Error::domain(format!(
                    "mixture rates must be positive, got {rate}"
                )));
            }
            total += weight;
        }
        if total <= 0.0 {
            return Err(Error::domain("mixture weights must not all be zero"));
        }
        Ok(ExponentialMixture {
            components: components.iter().map(|&(w, r)| (w / total, r)).collect(),
        })
    }

    pub fn components(&self) -> &[(f64, f64)] {
        &self.components
    }
}

impl Density for ExponentialMixture {
    fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        self.components
            .iter()
            .map(|&(w, r)| w * r * (-r * x).exp())
            .sum()
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        let value = self
            .components
            .iter()
            .map(|&(w, r)| w * Exponential { rate: r }.mass(lo, hi))
            .sum();
        Ok(Estimate {
            value,
            error_bound: 0.0,
        })
    }

    fn tail_mass(&self, t: f64) -> f64 {
        self.components
            .iter()
            .map(|&(w, r)| w * Exponential { rate: r }.tail_mass(t))
            .sum()
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = seeded_rng(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let pick: f64 = rng.gen();
            let mut acc = 0.0;
            let mut rate = self.components[self.components.len() - 1].1;
            for &(w, r) in &self.components {
                acc += w;
                if pick < acc {
                    rate = r;
                    break;
                }
            }
            let u: f64 = rng.gen();
            let v = -(1.0 - u).ln() / rate;
            if v > 0.0 {
                out.push(v);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Exact reference density
// ---------------------------------------------------------------------------

/// The reciprocal density `1/(x ln 10)` on `[1, 10)`: its first-digit
/// probabilities equal the logarithmic reference law analytically, making it
/// a zero-error fixture for the conformance criterion.
#[derive(Debug, Clone, Copy, Default)]
pub struct BenfordExact;

impl BenfordExact {
    pub fn new() -> Self {
        BenfordExact
    }

    /// `log₁₀` clamped to the support.
    fn cdf(&self, x: f64) -> f64 {
        if x <= 1.0 {
            0.0
        } else if x >= 10.0 {
            1.0
        } else {
            x.ln() / std::f64::consts::LN_10
        }
    }
}

impl Density for BenfordExact {
    fn pdf(&self, x: f64) -> f64 {
        if (1.0..10.0).contains(&x) {
            1.0 / (x * std::f64::consts::LN_10)
        } else {
            0.0
        }
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        let lo = lo.clamp(1.0, 10.0);
        let hi = hi.clamp(1.0, 10.0);
        let value = if hi <= lo {
            0.0
        } else {
            ((hi - lo) / lo).ln_1p() / std::f64::consts::LN_10
        };
        Ok(Estimate {
            value,
            error_bound: 0.0,
        })
    }

    fn tail_mass(&self, t: f64) -> f64 {
        if t >= 10.0 {
            0.0
        } else {
            1.0 - self.cdf(t)
        }
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = seeded_rng(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let v = 10f64.powf(rng.gen::<f64>());
            if (1.0..10.0).contains(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Piecewise-constant (step) densities
// ---------------------------------------------------------------------------

/// A histogram-style density: constant on each `[breaks[i], breaks[i+1])`,
/// zero elsewhere. Deliberately discontinuous — the fixture class for the
/// piecewise-linear approximation machinery.
#[derive(Debug, Clone)]
pub struct PiecewiseConstant {
    breaks: Vec<f64>,
    heights: Vec<f64>,
}

impl PiecewiseConstant {
    pub fn new(breaks: Vec<f64>, heights: Vec<f64>) -> Result<Self> {
        if breaks.len() < 2 || heights.len() + 1 != breaks.len() {
            return Err(Error::domain(
                "piecewise-constant density needs n+1 breakpoints for n heights",
            ));
        }
        if breaks[0] <= 0.0 || breaks.iter().any(|b| !b.is_finite()) {
            return Err(Error::domain("breakpoints must be finite and positive"));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("breakpoints must be strictly increasing"));
        }
        if heights.iter().any(|h| !h.is_finite() || *h < 0.0) {
            return Err(Error::domain("heights must be finite and nonnegative"));
        }
        let mass: f64 = heights
            .iter()
            .zip(breaks.windows(2))
            .map(|(h, w)| h * (w[1] - w[0]))
            .sum();
        if mass <= 0.0 {
            return Err(Error::domain("density must have positive total mass"));
        }
        Ok(PiecewiseConstant {
            heights: heights.iter().map(|h| h / mass).collect(),
            breaks,
        })
    }

    /// Two-block step fixture: height 1/2 on `[1,2) ∪ [3,4)`.
    pub fn two_block_step() -> Self {
        PiecewiseConstant::new(vec![1.0, 2.0, 3.0, 4.0], vec![0.5, 0.0, 0.5])
            .expect("static fixture")
    }

    fn mass_below(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (h, w) in self.heights.iter().zip(self.breaks.windows(2)) {
            if x <= w[0] {
                break;
            }
            acc += h * (x.min(w[1]) - w[0]);
        }
        acc
    }
}

impl Density for PiecewiseConstant {
    fn pdf(&self, x: f64) -> f64 {
        if x < self.breaks[0] || x >= self.breaks[self.breaks.len() - 1] {
            return 0.0;
        }
        let idx = self.breaks.partition_point(|b| *b <= x) - 1;
        self.heights[idx.min(self.heights.len() - 1)]
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        let hi = hi.min(self.breaks[self.breaks.len() - 1]);
        let value = if hi <= lo {
            0.0
        } else {
            self.mass_below(hi) - self.mass_below(lo)
        };
        Ok(Estimate {
            value: value.max(0.0),
            error_bound: 0.0,
        })
    }

    fn tail_mass(&self, t: f64) -> f64 {
        let top = self.breaks[self.breaks.len() - 1];
        self.mass_below(1.0 / t) + (self.mass_below(top) - self.mass_below(t)).max(0.0)
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = seeded_rng(seed);
        let masses: Vec<f64> = self
            .heights
            .iter()
            .zip(self.breaks.windows(2))
            .map(|(h, w)| h * (w[1] - w[0]))
            .collect();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let pick: f64 = rng.gen();
            let mut acc = 0.0;
            let mut seg = masses.len() - 1;
            for (i, m) in masses.iter().enumerate() {
                acc += m;
                if pick < acc {
                    seg = i;
                    break;
                }
            }
            if masses[seg] == 0.0 {
                continue;
            }
            let (a, b) = (self.breaks[seg], self.breaks[seg + 1]);
            let v = a + rng.gen::<f64>() * (b - a);
            if v >= a && v < b {
                out.push(v);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Truncated normal
// ---------------------------------------------------------------------------

/// A normal distribution restricted to the positive axis and renormalized —
/// the narrow-distribution violation fixture.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedNormal {
    mean: f64,
    sd: f64,
    /// Mass of the untruncated normal on the positive axis.
    norm: f64,
    /// Certified absolute error of `norm`.
    norm_err: f64,
}

fn standard_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Upper bound on the standard normal upper tail beyond `z >= 0`.
fn normal_tail_bound(z: f64) -> f64 {
    if z >= 0.0 {
        0.5 * (-0.5 * z * z).exp()
    } else {
        1.0
    }
}

impl TruncatedNormal {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        if !mean.is_finite() || !sd.is_finite() || sd <= 0.0 {
            return Err(Error::domain(format!(
                "truncated normal requires finite mean and positive sd, got ({mean}, {sd})"
            )));
        }
        // norm = P(N(mean, sd) > 0) = upper tail of the standard normal
        // beyond -mean/sd, integrated over a 45-sigma window.
        let z0 = -mean / sd;
        let clipped = z0.max(-45.0);
        let est = adaptive_quadrature(
            standard_normal_pdf,
            clipped,
            45.0,
            1e-14,
            DEFAULT_QUAD_BUDGET,
        )?;
        let norm = est.value;
        let norm_err = est.error_bound + normal_tail_bound(45.0);
        if norm < 1e-9 {
            return Err(Error::domain(
                "truncated normal has negligible mass on the positive axis",
            ));
        }
        Ok(TruncatedNormal {
            mean,
            sd,
            norm,
            norm_err,
        })
    }
}

impl Density for TruncatedNormal {
    fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        standard_normal_pdf((x - self.mean) / self.sd) / (self.sd * self.norm)
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        let z_lo = ((lo.max(0.0) - self.mean) / self.sd).clamp(-45.0, 45.0);
        let z_hi = if hi.is_finite() {
            ((hi - self.mean) / self.sd).clamp(-45.0, 45.0)
        } else {
            45.0
        };
        if z_hi <= z_lo {
            return Ok(Estimate {
                value: 0.0,
                error_bound: normal_tail_bound(45.0) / self.norm,
            });
        }
        let inner_tol = (tol * self.norm * 0.25).max(1e-300);
        let est = adaptive_quadrature(
            standard_normal_pdf,
            z_lo,
            z_hi,
            inner_tol,
            DEFAULT_QUAD_BUDGET,
        )
        .map_err(|err| match err {
            // report the caller's tolerance, not the z-space one
            Error::ToleranceNotMet { achieved, .. } => Error::ToleranceNotMet {
                requested: tol,
                achieved: achieved / self.norm,
            },
            other => other,
        })?;
        let value = est.value / self.norm;
        let error_bound = est.error_bound / self.norm
            + value * (self.norm_err / self.norm)
            + 2.0 * normal_tail_bound(45.0) / self.norm;
        if error_bound > tol {
            return Err(Error::ToleranceNotMet {
                requested: tol,
                achieved: error_bound,
            });
        }
        Ok(Estimate { value, error_bound })
    }

    fn tail_mass(&self, t: f64) -> f64 {
        let above = normal_tail_bound((t - self.mean) / self.sd) / self.norm;
        // The pdf is monotone up to the mode, so the sup on (0, s] sits at
        // min(s, mean).
        let s = 1.0 / t;
        let peak = s.min(self.mean.max(f64::MIN_POSITIVE));
        let below = s * standard_normal_pdf((peak - self.mean) / self.sd) / (self.sd * self.norm);
        (above + below).min(1.0)
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = seeded_rng(seed);
        let mut out = Vec::with_capacity(n);
        let mut attempts: usize = 0;
        let budget = 1_000_000usize.saturating_mul(n.max(1));
        while out.len() < n {
            attempts += 1;
            if attempts > budget {
                return Err(Error::domain(
                    "rejection sampling stalled; truncated mass too small",
                ));
            }
            let u1: f64 = 1.0 - rng.gen::<f64>();
            let u2: f64 = rng.gen();
            let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
            let x = self.mean + self.sd * z;
            if x > 0.0 {
                out.push(x);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Scaled densities
// ---------------------------------------------------------------------------

/// The density of `a·X` when `X ~ inner`: `g(x) = (1/a) f(x/a)`.
#[derive(Debug, Clone, Copy)]
pub struct Scaled<D> {
    inner: D,
    factor: f64,
}

impl<D: Density> Scaled<D> {
    pub fn new(inner: D, factor: f64) -> Result<Self> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(Error::domain(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        Ok(Scaled { inner, factor })
    }
}

impl<D: Density> Density for Scaled<D> {
    fn pdf(&self, x: f64) -> f64 {
        self.inner.pdf(x / self.factor) / self.factor
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        self.inner
            .interval_mass(lo / self.factor, hi / self.factor, tol)
    }

    fn tail_mass(&self, t: f64) -> f64 {
        let shrunk = (t * self.factor).min(t / self.factor);
        if shrunk < 1.0 {
            1.0
        } else {
            self.inner.tail_mass(shrunk)
        }
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        Ok(self
            .inner
            .sample(n, seed)?
            .into_iter()
            .map(|v| v * self.factor)
            .collect())
    }
}
