//! Continuous piecewise-linear densities and certified L1 approximation of
//! other densities by them.
//!
//! A discontinuous density can be replaced by a continuous piecewise-linear
//! one at a certified L1 cost; digit probabilities and the conformance
//! criterion then transfer with at most that cost, since the criterion
//! kernel is bounded by one in absolute value.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use rand::Rng;

use crate::density::{seeded_rng, Density};
use crate::error::{Error, Result};
use crate::Estimate;

/// Hard cap on approximation nodes.
const MAX_NODES: usize = 40_000;

/// A continuous density that interpolates linearly between nodes and is zero
/// outside `[nodes[0], nodes[last]]`. Interval masses are exact polynomial
/// integrals; normalization is exact by construction.
#[derive(Debug, Clone)]
pub struct PiecewiseLinear {
    nodes: Vec<f64>,
    /// Raw (pre-normalization) node values; the pdf divides by `raw_mass`.
    raw_values: Vec<f64>,
    raw_mass: f64,
}

impl PiecewiseLinear {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != values.len() {
            return Err(Error::domain(
                "piecewise-linear density needs matching nodes and values, at least two",
            ));
        }
        if nodes[0] <= 0.0 || nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("nodes must be finite and positive"));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("nodes must be strictly increasing"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::domain("values must be finite and nonnegative"));
        }
        let raw_mass = trapezoid_mass(&nodes, &values);
        if raw_mass <= 0.0 {
            return Err(Error::domain("density must have positive total mass"));
        }
        Ok(PiecewiseLinear {
            nodes,
            raw_values: values,
            raw_mass,
        })
    }

    /// Parses the two-column text format: one `x value` pair per line,
    /// whitespace- or comma-separated, `#` comments allowed, `x` strictly
    /// increasing.
    pub fn from_table_str(text: &str) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut values = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty());
            let (Some(x), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::parse(format!(
                    "line {}: expected two columns `x value`, got {raw_line:?}",
                    idx + 1
                )));
            };
            let x: f64 = x
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad x value {x:?}", idx + 1)))?;
            let v: f64 = v
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad density value {v:?}", idx + 1)))?;
            nodes.push(x);
            values.push(v);
        }
        PiecewiseLinear::new(nodes, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Normalized node values.
    pub fn values(&self) -> Vec<f64> {
        self.raw_values.iter().map(|v| v / self.raw_mass).collect()
    }

    /// Exact mass of `(0, x)` before normalization.
    fn raw_mass_below(&self, x: f64) -> f64 {
        if x <= self.nodes[0] {
            return 0.0;
        }
        let mut acc = 0.0;
        for (w, v) in self.nodes.windows(2).zip(self.raw_values.windows(2)) {
            if x <= w[0] {
                break;
            }
            let width = w[1] - w[0];
            if x >= w[1] {
                acc += 0.5 * (v[0] + v[1]) * width;
            } else {
                let t = x - w[0];
                let slope = (v[1] - v[0]) / width;
                acc += v[0] * t + 0.5 * slope * t * t;
            }
        }
        acc
    }
}

fn trapezoid_mass(nodes: &[f64], values: &[f64]) -> f64 {
    nodes
        .windows(2)
        .zip(values.windows(2))
        .map(|(w, v)| 0.5 * (v[0] + v[1]) * (w[1] - w[0]))
        .sum()
}

impl Density for PiecewiseLinear {
    fn pdf(&self, x: f64) -> f64 {
        let last = self.nodes.len() - 1;
        if x < self.nodes[0] || x > self.nodes[last] {
            return 0.0;
        }
        let idx = self.nodes.partition_point(|n| *n <= x).clamp(1, last) - 1;
        let (x0, x1) = (self.nodes[idx], self.nodes[idx + 1]);
        let (v0, v1) = (self.raw_values[idx], self.raw_values[idx + 1]);
        (v0 + (v1 - v0) * (x - x0) / (x1 - x0)) / self.raw_mass
    }

    fn interval_mass(&self, lo: f64, hi: f64, tol: f64) -> Result<Estimate> {
        if let Some(trivial) = super::validate_interval(lo, hi, tol)? {
            return Ok(trivial);
        }
        let hi = hi.min(self.nodes[self.nodes.len() - 1]);
        let value = if hi <= lo {
            0.0
        } else {
            (self.raw_mass_below(hi) - self.raw_mass_below(lo)) / self.raw_mass
        };
        Ok(Estimate {
            value: value.clamp(0.0, 1.0),
            error_bound: 0.0,
        })
    }

    fn tail_mass(&self, t: f64) -> f64 {
        let below = self.raw_mass_below(1.0 / t) / self.raw_mass;
        let above = 1.0 - self.raw_mass_below(t) / self.raw_mass;
        (below + above.max(0.0)).min(1.0)
    }

    fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = seeded_rng(seed);
        let masses: Vec<f64> = self
            .nodes
            .windows(2)
            .zip(self.raw_values.windows(2))
            .map(|(w, v)| 0.5 * (v[0] + v[1]) * (w[1] - w[0]) / self.raw_mass)
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
            if masses[seg] <= 0.0 {
                continue;
            }
            let (x0, x1) = (self.nodes[seg], self.nodes[seg + 1]);
            let (v0, v1) = (self.raw_values[seg], self.raw_values[seg + 1]);
            let u: f64 = rng.gen();
            // Invert v0·t + (v1−v0)t²/2 = u·(v0+v1)/2 on t ∈ [0,1] using the
            // cancellation-free root.
            let a = 0.5 * (v1 - v0);
            let b = v0;
            let c = u * 0.5 * (v0 + v1);
            let t = if a.abs() < 1e-300 * b.abs().max(1.0) {
                if b > 0.0 {
                    c / b
                } else {
                    continue;
                }
            } else {
                let disc = (b * b + 4.0 * a * c).max(0.0).sqrt();
                if b + disc > 0.0 {
                    2.0 * c / (b + disc)
                } else {
                    continue;
                }
            };
            let v = x0 + t.clamp(0.0, 1.0) * (x1 - x0);
            if v >= x0 && v < x1 {
                out.push(v);
            }
        }
        Ok(out)
    }

    fn as_piecewise_linear(&self) -> Option<&PiecewiseLinear> {
        Some(self)
    }
}

// ---------------------------------------------------------------------------
// Certified approximation
// ---------------------------------------------------------------------------

/// One candidate segment of the approximant, carrying an estimate of
/// `∫ |f − line|` over itself plus the embedded-rule spread of that estimate.
#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    l1_est: f64,
    l1_err: f64,
}

impl Segment {
    fn contribution(&self) -> f64 {
        self.l1_est + self.l1_err
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.contribution() == other.contribution() && self.a == other.a
    }
}
impl Eq for Segment {}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.contribution()
            .total_cmp(&other.contribution())
            .then_with(|| other.a.total_cmp(&self.a))
    }
}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn gauss_nodes() -> &'static [(f64, f64)] {
    // 21-point Gauss–Legendre on [0, 1]; its spread against the embedded
    // 10-point subset drives the refinement of the L1 estimate.
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = 21;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push((0.5 * (1.0 - x), 0.5 * w));
        }
        out.sort_by(|p, q| p.0.total_cmp(&q.0));
        out
    })
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Estimates `∫_a^b |f − interpolant|` with a fine/coarse pair: the full
/// 21-point rule against the same rule applied to the two halves gives the
/// spread used as the error term.
fn segment_l1<D: Density + ?Sized>(f: &D, a: f64, b: f64, fa: f64, fb: f64) -> Segment {
    let rule = gauss_nodes();
    let width = b - a;
    let line = |x: f64| fa + (fb - fa) * (x - a) / width;
    let whole: f64 = rule
        .iter()
        .map(|&(t, w)| {
            let x = a + t * width;
            w * (f.pdf(x) - line(x)).abs()
        })
        .sum::<f64>()
        * width;
    let mid = 0.5 * (a + b);
    let halves: f64 = [(a, mid), (mid, b)]
        .iter()
        .map(|&(lo, hi)| {
            rule.iter()
                .map(|&(t, w)| {
                    let x = lo + t * (hi - lo);
                    w * (f.pdf(x) - line(x)).abs()
                })
                .sum::<f64>()
                * (hi - lo)
        })
        .sum();
    Segment {
        a,
        b,
        fa,
        fb,
        l1_est: halves,
        l1_err: (whole - halves).abs(),
    }
}

/// Builds a continuous piecewise-linear density `h` with a certified bound
/// `l1_bound ≥ ∫|f − h|`, refusing to return anything it cannot certify
/// below `eps`.
///
/// The approximant interpolates `f` on a window `[1/t, t]` chosen so the
/// excluded tail mass is certified small; nodes are refined recursively where
/// the local L1 estimate is largest. Already piecewise-linear densities are
/// returned unchanged with a zero bound.
pub fn approximate_piecewise_linear<D: Density + ?Sized>(
    f: &D,
    eps: f64,
) -> Result<(PiecewiseLinear, f64)> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    if let Some(existing) = f.as_piecewise_linear() {
        return Ok((existing.clone(), 0.0));
    }

    // Window with certified tail at most eps/4.
    let mut t = 10.0f64;
    let mut tail = f.tail_mass(t);
    while tail > 0.25 * eps {
        t *= 10.0;
        if t > 1e300 {
            return Err(Error::ToleranceNotMet {
                requested: eps,
                achieved: tail,
            });
        }
        tail = f.tail_mass(t);
    }
    let interior_target = 0.5 * eps - tail;

    let (lo, hi) = (1.0 / t, t);
    let decades = (hi / lo).log10();
    let initial = ((4.0 * decades).ceil() as usize).clamp(16, 1024);
    let ratio = (hi / lo).powf(1.0 / initial as f64);
    let mut cuts = Vec::with_capacity(initial + 1);
    let mut x = lo;
    for _ in 0..initial {
        cuts.push(x);
        x *= ratio;
    }
    cuts.push(hi);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let seg = segment_l1(f, w[0], w[1], f.pdf(w[0]), f.pdf(w[1]));
        total += seg.contribution();
        heap.push(seg);
    }

    let mut node_count = cuts.len();
    while total > interior_target && node_count < MAX_NODES {
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.contribution() == 0.0 || mid <= worst.a || mid >= worst.b {
            // nothing left to gain; put it back and stop
            heap.push(worst);
            break;
        }
        let fm = f.pdf(mid);
        let left = segment_l1(f, worst.a, mid, worst.fa, fm);
        let right = segment_l1(f, mid, worst.b, fm, worst.fb);
        total += left.contribution() + right.contribution() - worst.contribution();
        heap.push(left);
        heap.push(right);
        node_count += 1;
    }

    let mut segments: Vec<Segment> = heap.into_vec();
    segments.sort_by(|p, q| p.a.total_cmp(&q.a));
    let interior: f64 = segments.iter().map(|s| s.contribution()).sum();

    let mut nodes = Vec::with_capacity(segments.len() + 1);
    let mut values = Vec::with_capacity(segments.len() + 1);
    nodes.push(segments[0].a);
    values.push(segments[0].fa.max(0.0));
    for seg in &segments {
        nodes.push(seg.b);
        values.push(seg.fb.max(0.0));
    }

    let raw_mass = trapezoid_mass(&nodes, &values);
    if raw_mass <= 0.0 {
        return Err(Error::domain(
            "approximation collapsed to zero mass; density has no mass in the window",
        ));
    }
    let h = PiecewiseLinear::new(nodes, values)?;
    // Normalizing h moves it by |raw_mass − 1| in L1.
    let l1_bound = interior + tail + (raw_mass - 1.0).abs();
    if l1_bound > eps {
        return Err(Error::ToleranceNotMet {
            requested: eps,
            achieved: l1_bound,
        });
    }
    Ok((h, l1_bound))
}
