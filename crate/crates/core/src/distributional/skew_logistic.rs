//! Gilchrist's skew-logistic quantile family.
//!
//! `Q(t) = γ + η [ (1 − δ)/2 · ln t − (1 + δ)/2 · ln(1 − t) ]`, `t ∈ (0, 1)`.
//!
//! Writing `L = ln t − ln(1 − t)` and `S = ln t + ln(1 − t)`, the quantile is
//! `γ + η L / 2 − η δ S / 2`. Under `t ~ U(0, 1)`, `E[L] = 0`, `E[S] = −2`,
//! `Var L = π²/3`, `Var S = 4 − π²/3` and `Cov(L, S) = 0`. Every moment and
//! distance below follows from those four numbers.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

use super::grid::{GridQuantile, LevelGrid};
use super::{Decomposition, DistributionError};

const PI2_12: f64 = PI * PI / 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkewLogistic {
    gamma: f64,
    eta: f64,
    delta: f64,
}

impl SkewLogistic {
    pub fn new(gamma: f64, eta: f64, delta: f64) -> Result<Self, DistributionError> {
        if !(gamma.is_finite() && eta.is_finite() && delta.is_finite()) {
            return Err(DistributionError::InvalidParameters(
                "skew-logistic parameters must be finite".into(),
            ));
        }
        if eta <= 0.0 {
            return Err(DistributionError::InvalidParameters(format!(
                "scale eta must be positive, got {eta}"
            )));
        }
        if !(-1.0..=1.0).contains(&delta) {
            return Err(DistributionError::InvalidParameters(format!(
                "skewness delta must lie in [-1, 1], got {delta}"
            )));
        }
        Ok(Self { gamma, eta, delta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn quantile(&self, t: f64) -> Result<f64, DistributionError> {
        if !(t > 0.0 && t < 1.0) {
            return Err(DistributionError::LevelOutOfRange(t));
        }
        Ok(self.quantile_unchecked(t))
    }

    pub(crate) fn quantile_unchecked(&self, t: f64) -> f64 {
        let lo = 0.5 * (1.0 - self.delta) * t.ln();
        let hi = 0.5 * (1.0 + self.delta) * (-t).ln_1p();
        self.gamma + self.eta * (lo - hi)
    }

    /// `μ = γ + ηδ`.
    pub fn mean(&self) -> f64 {
        self.gamma + self.eta * self.delta
    }

    /// `σ = η sqrt(δ² − (π²/12)(δ² − 1))`.
    pub fn std_dev(&self) -> f64 {
        let d2 = self.delta * self.delta;
        let radicand = d2 - PI2_12 * (d2 - 1.0);
        self.eta * radicand.max(0.0).sqrt()
    }

    /// Same shape, shifted to zero mean (`γ' = −ηδ`).
    pub fn center(&self) -> Self {
        Self {
            gamma: -self.eta * self.delta,
            ..*self
        }
    }

    /// Closed-form position and dispersion parts of the squared distance.
    pub fn decompose(&self, other: &Self) -> Decomposition {
        let dmean = self.mean() - other.mean();
        let d_eta = self.eta - other.eta;
        let d_eta_delta = self.eta * self.delta - other.eta * other.delta;
        let ed2 = d_eta_delta * d_eta_delta;
        let dispersion = ed2 + PI2_12 * (d_eta * d_eta - ed2);
        Decomposition {
            position: dmean * dmean,
            dispersion: dispersion.max(0.0),
        }
    }

    pub fn sq_distance(&self, other: &Self) -> f64 {
        self.decompose(other).total()
    }

    /// Weighted average of quantile functions, which stays in the family:
    /// `(γ̄, η̄, (ηδ)‾ / η̄)`.
    pub fn barycenter(weights: &[f64], members: &[Self]) -> Result<Self, DistributionError> {
        let total = check_weights(weights, members.len())?;
        let mut gamma = 0.0;
        let mut eta = 0.0;
        let mut eta_delta = 0.0;
        for (w, s) in weights.iter().zip(members) {
            gamma += w * s.gamma;
            eta += w * s.eta;
            eta_delta += w * s.eta * s.delta;
        }
        gamma /= total;
        eta /= total;
        eta_delta /= total;
        let delta = (eta_delta / eta).clamp(-1.0, 1.0);
        Ok(Self { gamma, eta, delta })
    }

    /// Exact evaluation at each level of `grid`.
    pub fn rasterize(&self, grid: &Arc<LevelGrid>) -> Result<GridQuantile, DistributionError> {
        let values = grid
            .levels()
            .iter()
            .map(|&t| self.quantile(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GridQuantile::from_parts(Arc::clone(grid), values))
    }
}

pub(crate) fn check_weights(weights: &[f64], n: usize) -> Result<f64, DistributionError> {
    if weights.len() != n || n == 0 {
        return Err(DistributionError::InvalidWeights(format!(
            "{} weights for {} distributions",
            weights.len(),
            n
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(DistributionError::InvalidWeights(
            "weights must be finite and non-negative".into(),
        ));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(DistributionError::InvalidWeights(
            "weights are all zero".into(),
        ));
    }
    Ok(total)
}
