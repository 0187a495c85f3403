//! Distribution-valued data as quantile functions, and the L2 Wasserstein
//! arithmetic on them.
//!
//! A [`Distribution`] is either an analytic [`SkewLogistic`] or a
//! [`GridQuantile`] sampled on a [`LevelGrid`]. Two analytic operands are
//! handled in closed form. Anything involving a grid is computed by the
//! grid's quadrature, rasterizing the analytic side onto the grid first.

mod grid;
mod skew_logistic;
mod table;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use grid::{from_histogram, GridQuantile, LevelGrid, DEFAULT_GRID_SIZE};
pub use skew_logistic::SkewLogistic;
pub use table::DistributionalTable;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistributionError {
    #[error("invalid level grid: {0}")]
    InvalidLevels(String),
    #[error("invalid quantile values: {0}")]
    InvalidValues(String),
    #[error("invalid skew-logistic parameters: {0}")]
    InvalidParameters(String),
    #[error("level {0} is outside (0, 1) where the quantile function diverges")]
    LevelOutOfRange(f64),
    #[error("grid-backed operands do not share a level grid; resample first")]
    GridMismatch,
    #[error("invalid barycenter weights: {0}")]
    InvalidWeights(String),
    #[error("invalid histogram: {0}")]
    InvalidHistogram(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
}

/// Position (`dM`, squared mean difference) and dispersion (`dV`, distance
/// between centered quantiles) parts of a squared Wasserstein distance.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Decomposition {
    pub position: f64,
    pub dispersion: f64,
}

impl Decomposition {
    pub fn total(&self) -> f64 {
        self.position + self.dispersion
    }
}

impl std::ops::AddAssign for Decomposition {
    fn add_assign(&mut self, rhs: Self) {
        self.position += rhs.position;
        self.dispersion += rhs.dispersion;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Grid(GridQuantile),
    SkewLogistic(SkewLogistic),
}

impl From<GridQuantile> for Distribution {
    fn from(q: GridQuantile) -> Self {
        Distribution::Grid(q)
    }
}

impl From<SkewLogistic> for Distribution {
    fn from(s: SkewLogistic) -> Self {
        Distribution::SkewLogistic(s)
    }
}

impl Distribution {
    pub fn mean(&self) -> f64 {
        match self {
            Distribution::Grid(q) => q.mean(),
            Distribution::SkewLogistic(s) => s.mean(),
        }
    }

    pub fn std_dev(&self) -> f64 {
        match self {
            Distribution::Grid(q) => q.std_dev(),
            Distribution::SkewLogistic(s) => s.std_dev(),
        }
    }

    pub fn center(&self) -> Distribution {
        match self {
            Distribution::Grid(q) => Distribution::Grid(q.center()),
            Distribution::SkewLogistic(s) => Distribution::SkewLogistic(s.center()),
        }
    }

    /// Quantile at level `t`. Grids interpolate linearly and hold their
    /// boundary values outside the knot hull.
    pub fn quantile(&self, t: f64) -> Result<f64, DistributionError> {
        match self {
            Distribution::Grid(q) => Ok(q.eval(t)),
            Distribution::SkewLogistic(s) => s.quantile(t),
        }
    }

    pub fn as_grid(&self) -> Option<&GridQuantile> {
        match self {
            Distribution::Grid(q) => Some(q),
            Distribution::SkewLogistic(_) => None,
        }
    }

    pub fn as_skew_logistic(&self) -> Option<&SkewLogistic> {
        match self {
            Distribution::SkewLogistic(s) => Some(s),
            Distribution::Grid(_) => None,
        }
    }

    pub fn grid(&self) -> Option<&Arc<LevelGrid>> {
        self.as_grid().map(GridQuantile::grid)
    }
}

/// Evaluates `d` at the levels of `grid`.
pub fn resample(
    d: &Distribution,
    grid: &Arc<LevelGrid>,
) -> Result<GridQuantile, DistributionError> {
    match d {
        Distribution::Grid(q) => Ok(q.resample(grid)),
        Distribution::SkewLogistic(s) => s.rasterize(grid),
    }
}

/// Squared L2 Wasserstein distance `∫ (Q_a − Q_b)² dt`.
pub fn wasserstein_sq(a: &Distribution, b: &Distribution) -> Result<f64, DistributionError> {
    match (a, b) {
        (Distribution::SkewLogistic(x), Distribution::SkewLogistic(y)) => Ok(x.sq_distance(y)),
        (Distribution::Grid(x), Distribution::Grid(y)) => {
            x.check_grid(y)?;
            Ok(x.sq_distance(y))
        }
        (Distribution::Grid(x), Distribution::SkewLogistic(y)) => {
            Ok(x.sq_distance(&y.rasterize(x.grid())?))
        }
        (Distribution::SkewLogistic(x), Distribution::Grid(y)) => {
            Ok(x.rasterize(y.grid())?.sq_distance(y))
        }
    }
}

/// Splits the squared distance into `(dM, dV)`; `dM + dV = d²`.
pub fn decompose(a: &Distribution, b: &Distribution) -> Result<Decomposition, DistributionError> {
    match (a, b) {
        (Distribution::SkewLogistic(x), Distribution::SkewLogistic(y)) => Ok(x.decompose(y)),
        (Distribution::Grid(x), Distribution::Grid(y)) => {
            x.check_grid(y)?;
            Ok(grid_decompose(x, y))
        }
        (Distribution::Grid(x), Distribution::SkewLogistic(y)) => {
            Ok(grid_decompose(x, &y.rasterize(x.grid())?))
        }
        (Distribution::SkewLogistic(x), Distribution::Grid(y)) => {
            Ok(grid_decompose(&x.rasterize(y.grid())?, y))
        }
    }
}

fn grid_decompose(a: &GridQuantile, b: &GridQuantile) -> Decomposition {
    let dm = a.mean() - b.mean();
    Decomposition {
        position: dm * dm,
        dispersion: a.centered_sq_distance(b),
    }
}

/// Weighted Wasserstein barycenter: the pointwise weighted mean of the
/// quantile functions.
///
/// All-analytic inputs stay analytic. If any input is grid-backed, every
/// grid input must share one grid and analytic inputs are rasterized on it.
pub fn barycenter(weights: &[f64], ds: &[Distribution]) -> Result<Distribution, DistributionError> {
    let total = skew_logistic::check_weights(weights, ds.len())?;
    let grid = match ds.iter().find_map(Distribution::grid) {
        None => {
            let members: Vec<SkewLogistic> = ds
                .iter()
                .filter_map(|d| d.as_skew_logistic().copied())
                .collect();
            return SkewLogistic::barycenter(weights, &members).map(Distribution::SkewLogistic);
        }
        Some(g) => Arc::clone(g),
    };
    let mut acc = vec![0.0; grid.len()];
    for (w, d) in weights.iter().zip(ds) {
        if *w == 0.0 {
            continue;
        }
        match d {
            Distribution::Grid(q) => {
                if !Arc::ptr_eq(q.grid(), &grid) && q.levels() != grid.levels() {
                    return Err(DistributionError::GridMismatch);
                }
                for (a, v) in acc.iter_mut().zip(q.values()) {
                    *a += w * v;
                }
            }
            Distribution::SkewLogistic(s) => {
                let q = s.rasterize(&grid)?;
                for (a, v) in acc.iter_mut().zip(q.values()) {
                    *a += w * v;
                }
            }
        }
    }
    for a in &mut acc {
        *a /= total;
    }
    Ok(Distribution::Grid(GridQuantile::from_parts(grid, acc)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(lo: f64, grid: &Arc<LevelGrid>) -> Distribution {
        let values = grid.levels().iter().map(|t| lo + t).collect();
        Distribution::Grid(GridQuantile::new(Arc::clone(grid), values).unwrap())
    }

    #[test]
    fn location_shift_distance() {
        let grid = Arc::new(LevelGrid::midpoint(50));
        let a = uniform(0.0, &grid);
        let b = uniform(2.0, &grid);
        let d2 = wasserstein_sq(&a, &b).unwrap();
        assert!((d2 - 4.0).abs() < 1e-12);
        let dec = decompose(&a, &b).unwrap();
        assert!((dec.position - 4.0).abs() < 1e-12);
        assert!(dec.dispersion.abs() < 1e-24);
        assert_eq!(wasserstein_sq(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn same_mean_different_scale() {
        let a = Distribution::from(SkewLogistic::new(1.0, 1.0, 0.0).unwrap());
        let b = Distribution::from(SkewLogistic::new(1.0, 3.0, 0.0).unwrap());
        let dec = decompose(&a, &b).unwrap();
        assert_eq!(dec.position, 0.0);
        assert!(dec.dispersion > 0.0);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let a = uniform(0.0, &Arc::new(LevelGrid::midpoint(10)));
        let b = uniform(0.0, &Arc::new(LevelGrid::midpoint(11)));
        assert_eq!(wasserstein_sq(&a, &b), Err(DistributionError::GridMismatch));
        assert_eq!(decompose(&a, &b), Err(DistributionError::GridMismatch));
        assert_eq!(
            barycenter(&[1.0, 1.0], &[a, b]),
            Err(DistributionError::GridMismatch)
        );
    }

    #[test]
    fn barycenter_of_two_uniforms() {
        let grid = Arc::new(LevelGrid::midpoint(20));
        let a = uniform(0.0, &grid);
        let b = uniform(2.0, &grid);
        let g = barycenter(&[1.0, 1.0], &[a.clone(), b]).unwrap();
        let expected = uniform(1.0, &grid);
        for (x, y) in g
            .as_grid()
            .unwrap()
            .values()
            .iter()
            .zip(expected.as_grid().unwrap().values())
        {
            assert!((x - y).abs() < 1e-14);
        }
        let single = barycenter(&[1.0], std::slice::from_ref(&a)).unwrap();
        assert_eq!(single, a);
        assert!(barycenter(&[0.0], &[a]).is_err());
    }

    #[test]
    fn resample_onto_own_levels_is_identity() {
        let q = GridQuantile::from_levels(vec![0.1, 0.4, 0.8], vec![-1.0, 0.5, 2.0]).unwrap();
        let out = resample(&Distribution::Grid(q.clone()), q.grid()).unwrap();
        assert_eq!(out.values(), q.values());
    }

    #[test]
    fn symmetric_logistic_median() {
        let s = Distribution::from(SkewLogistic::new(0.0, 1.0, 0.0).unwrap());
        let grid = Arc::new(LevelGrid::new(vec![0.25, 0.5, 0.75]).unwrap());
        let q = resample(&s, &grid).unwrap();
        assert_eq!(q.values()[1], 0.0);
        assert!(resample(&s, &Arc::new(LevelGrid::new(vec![0.0, 0.5]).unwrap())).is_err());
    }

    #[test]
    fn centering_grid_gives_zero_mean() {
        let q = GridQuantile::from_levels(vec![0.1, 0.4, 0.8], vec![-1.0, 0.5, 2.0]).unwrap();
        let d = Distribution::Grid(q);
        assert!(d.center().mean().abs() < 1e-15);
        let z = Distribution::Grid(
            GridQuantile::new(Arc::new(LevelGrid::midpoint(3)), vec![-1.0, 0.0, 1.0]).unwrap(),
        );
        assert_eq!(z.mean(), 0.0);
        assert_eq!(z.center(), z);
    }
}
