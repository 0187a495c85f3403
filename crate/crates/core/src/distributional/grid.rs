//! Piecewise-linear quantile functions sampled on a level grid.

use std::sync::Arc;

use super::DistributionError;

/// Probability levels `t_1 < … < t_n` together with their quadrature rule.
///
/// On the midpoint layout `t_i = (i - 0.5) / n` integrals use the midpoint
/// rule (every weight `1 / n`). On any other knot set they integrate the
/// piecewise-linear interpolant through the knots exactly, with the
/// interpolant held constant outside `[t_1, t_n]`; this keeps histogram
/// quantiles exact under the within-bin uniform model.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelGrid {
    levels: Vec<f64>,
    weights: Vec<f64>,
    midpoint: bool,
}

/// Default number of midpoint levels used when a column has to be rasterized.
pub const DEFAULT_GRID_SIZE: usize = 200;

impl LevelGrid {
    pub fn new(levels: Vec<f64>) -> Result<Self, DistributionError> {
        if levels.len() < 2 {
            return Err(DistributionError::InvalidLevels(format!(
                "need at least 2 levels, got {}",
                levels.len()
            )));
        }
        if levels
            .iter()
            .any(|t| !t.is_finite() || *t < 0.0 || *t > 1.0)
        {
            return Err(DistributionError::InvalidLevels(
                "levels must lie in [0, 1]".into(),
            ));
        }
        if levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(DistributionError::InvalidLevels(
                "levels must be strictly increasing".into(),
            ));
        }
        let n = levels.len();
        if levels
            .iter()
            .enumerate()
            .all(|(i, &t)| t == (i as f64 + 0.5) / n as f64)
        {
            return Ok(Self::midpoint(n));
        }
        let weights = quadrature_weights(&levels);
        Ok(Self {
            levels,
            weights,
            midpoint: false,
        })
    }

    /// `n` midpoint levels `(i - 0.5) / n`, with exact `1 / n` weights.
    pub fn midpoint(n: usize) -> Self {
        assert!(n >= 2, "midpoint grid needs at least 2 levels");
        let levels = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let weights = vec![1.0 / n as f64; n];
        Self {
            levels,
            weights,
            midpoint: true,
        }
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// True for the midpoint layout `(i - 0.5) / n`.
    pub fn is_midpoint(&self) -> bool {
        self.midpoint
    }

    /// `∫ f` for `f` known at the levels.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// `∫ f²` for `f` known at the levels through `f(i)`.
    pub fn integrate_sq(&self, f: impl Fn(usize) -> f64) -> f64 {
        let n = self.levels.len();
        if self.midpoint {
            return (0..n)
                .map(|i| {
                    let v = f(i);
                    self.weights[i] * v * v
                })
                .sum();
        }
        let t = &self.levels;
        let mut prev = f(0);
        let mut s = t[0] * prev * prev;
        for i in 1..n {
            let cur = f(i);
            // exact for a linear segment
            s += (t[i] - t[i - 1]) / 3.0 * (prev * prev + prev * cur + cur * cur);
            prev = cur;
        }
        s + (1.0 - t[n - 1]) * prev * prev
    }
}

fn quadrature_weights(levels: &[f64]) -> Vec<f64> {
    let n = levels.len();
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let left = if i == 0 {
            levels[0]
        } else {
            0.5 * (levels[i] - levels[i - 1])
        };
        let right = if i + 1 == n {
            1.0 - levels[n - 1]
        } else {
            0.5 * (levels[i + 1] - levels[i])
        };
        weights.push(left + right);
    }
    weights
}

/// A quantile function known at the knots of a shared [`LevelGrid`].
#[derive(Debug, Clone)]
pub struct GridQuantile {
    grid: Arc<LevelGrid>,
    values: Vec<f64>,
    mean: f64,
}

impl PartialEq for GridQuantile {
    fn eq(&self, other: &Self) -> bool {
        self.same_grid(other) && self.values == other.values
    }
}

impl GridQuantile {
    pub fn new(grid: Arc<LevelGrid>, values: Vec<f64>) -> Result<Self, DistributionError> {
        if values.len() != grid.len() {
            return Err(DistributionError::InvalidValues(format!(
                "{} values for {} levels",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(DistributionError::InvalidValues(
                "quantile values must be finite".into(),
            ));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(DistributionError::InvalidValues(
                "quantile values must be non-decreasing".into(),
            ));
        }
        Ok(Self::from_parts(grid, values))
    }

    /// Builds from levels and values, allocating a fresh grid.
    pub fn from_levels(levels: Vec<f64>, values: Vec<f64>) -> Result<Self, DistributionError> {
        Self::new(Arc::new(LevelGrid::new(levels)?), values)
    }

    // Callers guarantee monotone finite values of the right length.
    pub(crate) fn from_parts(grid: Arc<LevelGrid>, values: Vec<f64>) -> Self {
        let mean = grid.integrate(&values);
        Self { grid, values, mean }
    }

    pub fn grid(&self) -> &Arc<LevelGrid> {
        &self.grid
    }

    pub fn levels(&self) -> &[f64] {
        self.grid.levels()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn std_dev(&self) -> f64 {
        let mean = self.mean;
        let var = self.grid.integrate_sq(|i| self.values[i] - mean);
        var.max(0.0).sqrt()
    }

    pub fn center(&self) -> Self {
        let mean = self.mean;
        let values = self.values.iter().map(|v| v - mean).collect();
        Self::from_parts(Arc::clone(&self.grid), values)
    }

    /// True when both quantiles live on the same levels.
    pub fn same_grid(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || self.grid.levels == other.grid.levels
    }

    /// Evaluates the interpolant; levels outside the knot hull take the
    /// nearest boundary value.
    pub fn eval(&self, t: f64) -> f64 {
        let levels = self.grid.levels();
        let n = levels.len();
        if t <= levels[0] {
            return self.values[0];
        }
        if t >= levels[n - 1] {
            return self.values[n - 1];
        }
        let hi = levels.partition_point(|&l| l <= t);
        let lo = hi - 1;
        let span = levels[hi] - levels[lo];
        let frac = (t - levels[lo]) / span;
        self.values[lo] + frac * (self.values[hi] - self.values[lo])
    }

    /// Resamples onto another grid by linear interpolation.
    pub fn resample(&self, grid: &Arc<LevelGrid>) -> Self {
        if self.same_grid_as(grid) {
            return Self::from_parts(Arc::clone(grid), self.values.clone());
        }
        let values = grid.levels().iter().map(|&t| self.eval(t)).collect();
        Self::from_parts(Arc::clone(grid), values)
    }

    fn same_grid_as(&self, grid: &Arc<LevelGrid>) -> bool {
        Arc::ptr_eq(&self.grid, grid) || self.grid.levels == grid.levels
    }

    pub(crate) fn check_grid(&self, other: &Self) -> Result<(), DistributionError> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(DistributionError::GridMismatch)
        }
    }

    pub(crate) fn sq_distance(&self, other: &Self) -> f64 {
        self.grid.integrate_sq(|i| self.values[i] - other.values[i])
    }

    pub(crate) fn centered_sq_distance(&self, other: &Self) -> f64 {
        let shift = self.mean - other.mean;
        self.grid
            .integrate_sq(|i| self.values[i] - other.values[i] - shift)
    }
}

/// Quantile function of a histogram under the within-bin uniform model.
///
/// Knots sit at the cumulative probabilities (including 0 and 1) and map to
/// the bin edges. Leading and trailing empty bins are trimmed; an interior
/// empty bin is a jump in the quantile function and gets a second knot a
/// hair above its cumulative level.
pub fn from_histogram(edges: &[f64], probs: &[f64]) -> Result<GridQuantile, DistributionError> {
    if probs.is_empty() || edges.len() != probs.len() + 1 {
        return Err(DistributionError::InvalidHistogram(format!(
            "{} edges for {} bins",
            edges.len(),
            probs.len()
        )));
    }
    if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DistributionError::InvalidHistogram(
            "bin edges must be finite and strictly increasing".into(),
        ));
    }
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(DistributionError::InvalidHistogram(
            "bin probabilities must be non-negative".into(),
        ));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(DistributionError::InvalidHistogram(format!(
            "bin probabilities sum to {total}, expected 1"
        )));
    }

    let first = probs.iter().position(|&p| p > 0.0).unwrap_or(0);
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);

    let mut levels = vec![0.0];
    let mut values = vec![edges[first]];
    let mut cum = 0.0;
    let mut pending_jump = false;
    for b in first..=last {
        let p = probs[b];
        if p == 0.0 {
            pending_jump = true;
            continue;
        }
        if pending_jump {
            // Right limit of the jump, placed just above the previous knot.
            let prev = *levels.last().unwrap();
            let gap = (cum + p).min(1.0) - prev;
            levels.push(prev + (0.5 * gap).min(1e-12));
            values.push(edges[b]);
            pending_jump = false;
        }
        cum += p;
        let t = if b == last { 1.0 } else { cum.min(1.0) };
        levels.push(t);
        values.push(edges[b + 1]);
    }
    GridQuantile::from_levels(levels, values)
}
