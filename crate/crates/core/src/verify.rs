//! Exact claims of the form `lhs = rhs` (componentwise) with an expected
//! outcome, and their numeric corroboration at seeded random points.
//!
//! Both sides are evaluated separately in floating point, so the numeric check
//! exercises the arithmetic that produced them rather than a canonical zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{Tensor11Field, Tensor12Field, VectorField};
use crate::symexpr::{Chart, RatFunc};

/// Agreement threshold, relative to `max(1, |lhs|, |rhs|)`.
pub const ZERO_TOLERANCE: f64 = 1e-9;
/// A difference must exceed this somewhere to corroborate a nonzero verdict.
pub const NONZERO_THRESHOLD: f64 = 1e-12;
pub const DEFAULT_POINTS: usize = 10;
const MAX_RESAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Zero,
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub label: String,
    pub chart: Chart,
    pub pairs: Vec<(RatFunc, RatFunc)>,
    pub expect: Expect,
}

impl Claim {
    pub fn new(label: impl Into<String>, chart: &Chart, expect: Expect) -> Self {
        Self {
            label: label.into(),
            chart: chart.clone(),
            pairs: Vec::new(),
            expect,
        }
    }

    pub fn push(&mut self, lhs: RatFunc, rhs: RatFunc) {
        self.pairs.push((lhs, rhs));
    }

    pub fn scalar(label: impl Into<String>, chart: &Chart, lhs: RatFunc, rhs: RatFunc, expect: Expect) -> Self {
        let mut c = Self::new(label, chart, expect);
        c.push(lhs, rhs);
        c
    }

    fn from_slices(label: impl Into<String>, chart: &Chart, lhs: &[RatFunc], rhs: &[RatFunc], expect: Expect) -> Self {
        let mut c = Self::new(label, chart, expect);
        c.pairs = lhs.iter().cloned().zip(rhs.iter().cloned()).collect();
        c
    }

    pub fn vf(label: impl Into<String>, lhs: &VectorField, rhs: &VectorField, expect: Expect) -> Self {
        Self::from_slices(label, lhs.chart(), lhs.components(), rhs.components(), expect)
    }

    pub fn vfs(label: impl Into<String>, lhs: &[VectorField], rhs: &[VectorField], expect: Expect) -> Self {
        let chart = lhs.first().or(rhs.first()).map(|v| v.chart().clone());
        let mut c = Self::new(label, &chart.unwrap_or_else(|| Chart::new(["x"]).expect("valid")), expect);
        for (a, b) in lhs.iter().zip(rhs) {
            c.pairs.extend(a.components().iter().cloned().zip(b.components().iter().cloned()));
        }
        c
    }

    pub fn t11(label: impl Into<String>, lhs: &Tensor11Field, rhs: &Tensor11Field, expect: Expect) -> Self {
        Self::from_slices(label, lhs.chart(), lhs.components(), rhs.components(), expect)
    }

    pub fn t12(label: impl Into<String>, lhs: &Tensor12Field, rhs: &Tensor12Field, expect: Expect) -> Self {
        Self::from_slices(label, lhs.chart(), lhs.components(), rhs.components(), expect)
    }

    /// Whether `lhs = rhs` holds exactly in every component.
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    /// Whether the exact outcome is the expected one.
    pub fn as_expected(&self) -> bool {
        self.holds() == (self.expect == Expect::Zero)
    }

    /// The first nonzero `lhs - rhs`, pretty-printed with its component index.
    pub fn first_difference(&self) -> Option<String> {
        self.pairs.iter().enumerate().find(|(_, (a, b))| a != b).map(|(k, (a, b))| {
            format!("[{k}] {}", self.chart.fmt_expr(&(a - b)))
        })
    }

    fn radical_value(&self) -> f64 {
        let d = self
            .pairs
            .iter()
            .flat_map(|(a, b)| [a.radicand(), b.radicand()])
            .max()
            .unwrap_or(0);
        (d as f64).sqrt()
    }

    /// Evaluates both sides at `points` random points of `[-2, 2]^n`,
    /// resampling any point near a pole of either side.
    pub fn corroborate(&self, seed: u64, points: usize) -> Numeric {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let radical = self.radical_value();
        let dim = self.chart.dim();
        let mut max_scaled = 0.0f64;
        let mut max_abs = 0.0f64;
        let mut sampled = 0;
        let mut attempts = 0;
        while sampled < points && attempts < points * MAX_RESAMPLES {
            attempts += 1;
            let point: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let values: Option<Vec<(f64, f64)>> = self
                .pairs
                .iter()
                .map(|(a, b)| Some((a.eval_f64(&point, radical)?, b.eval_f64(&point, radical)?)))
                .collect();
            let Some(values) = values else { continue };
            sampled += 1;
            for (a, b) in values {
                let diff = (a - b).abs();
                max_abs = max_abs.max(diff);
                max_scaled = max_scaled.max(diff / 1f64.max(a.abs()).max(b.abs()));
            }
        }
        let consistent = sampled == points
            && if self.holds() {
                max_scaled <= ZERO_TOLERANCE
            } else {
                max_abs > NONZERO_THRESHOLD
            };
        Numeric {
            points: sampled,
            max_abs_diff: max_abs,
            max_scaled_diff: max_scaled,
            consistent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Numeric {
    pub points: usize,
    pub max_abs_diff: f64,
    pub max_scaled_diff: f64,
    /// Whether the floating-point evidence agrees with the exact verdict.
    pub consistent: bool,
}
