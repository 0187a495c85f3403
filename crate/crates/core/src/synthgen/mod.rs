//! Synthetic skew-logistic data: scenario specifications, seeded
//! generation, closed-form oracles and ground-truth dispersion reports.
//!
//! Each object of cluster `i` draws, for every variable `j`, the parameters
//! `(γ, η, δ)` from independent Gaussians specific to `(i, j)`. Draws with
//! `η ≤ 0` or `|δ| > 1` are rejected and redrawn.

use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributional::{
    Decomposition, Distribution, DistributionError, DistributionalTable, SkewLogistic,
};
use crate::validity::{DispersionTable, ValidityError};

/// Redraw budget per parameter before a law is declared unusable.
const MAX_REJECTIONS: usize = 10_000;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid scenario spec: {0}")]
    InvalidSpec(String),
    #[error("unknown scenario preset `{0}` (expected 1, 2 or 3)")]
    UnknownPreset(String),
    #[error("could not parse scenario spec: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Validity(#[from] ValidityError),
}

/// How the second argument of a tabulated `N(a, b)` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spread {
    #[default]
    Variance,
    StdDev,
}

/// Gaussian law `N(mu, b)` for one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub mu: f64,
    pub b: f64,
}

impl GaussianSpec {
    pub fn std_dev(&self, spread: Spread) -> f64 {
        match spread {
            Spread::Variance => self.b.sqrt(),
            Spread::StdDev => self.b,
        }
    }
}

/// Laws for `(γ, η, δ)` of one cluster on one variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterLaws {
    pub gamma: GaussianSpec,
    pub eta: GaussianSpec,
    pub delta: GaussianSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub spread: Spread,
    #[serde(default = "default_objects")]
    pub objects_per_cluster: usize,
    pub variable_names: Vec<String>,
    /// `clusters[i][j]`: laws for cluster `i`, variable `j`.
    pub clusters: Vec<Vec<ParameterLaws>>,
}

fn default_objects() -> usize {
    100
}

const PRESETS: [&str; 3] = [
    include_str!("presets/scenario1.json"),
    include_str!("presets/scenario2.json"),
    include_str!("presets/scenario3.json"),
];

impl ScenarioSpec {
    /// Built-in scenario `1`, `2` or `3`.
    pub fn preset(k: usize) -> Result<Self, SynthError> {
        let text = k
            .checked_sub(1)
            .and_then(|i| PRESETS.get(i))
            .ok_or_else(|| SynthError::UnknownPreset(k.to_string()))?;
        Self::from_json(text)
    }

    pub fn from_json(text: &str) -> Result<Self, SynthError> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn n_variables(&self) -> usize {
        self.variable_names.len()
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let invalid = |m: String| Err(SynthError::InvalidSpec(m));
        if self.clusters.is_empty() || self.variable_names.is_empty() {
            return invalid("need at least one cluster and one variable".into());
        }
        if self.objects_per_cluster == 0 {
            return invalid("objects_per_cluster must be positive".into());
        }
        let p = self.variable_names.len();
        for (i, row) in self.clusters.iter().enumerate() {
            if row.len() != p {
                return invalid(format!(
                    "cluster {i} has {} variables, expected {p}",
                    row.len()
                ));
            }
            for laws in row {
                for g in [laws.gamma, laws.eta, laws.delta] {
                    if !(g.mu.is_finite() && g.b.is_finite() && g.b >= 0.0) {
                        return invalid(format!("cluster {i}: bad law N({}, {})", g.mu, g.b));
                    }
                }
                if laws.eta.b == 0.0 && laws.eta.mu <= 0.0 {
                    return invalid(format!("cluster {i}: degenerate η law at {}", laws.eta.mu));
                }
                if laws.delta.b == 0.0 && laws.delta.mu.abs() > 1.0 {
                    return invalid(format!(
                        "cluster {i}: degenerate δ law at {}",
                        laws.delta.mu
                    ));
                }
            }
        }
        Ok(())
    }
}

impl FromStr for ScenarioSpec {
    type Err = SynthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s
            .trim()
            .trim_start_matches("scenario")
            .parse::<usize>()
            .map_err(|_| SynthError::UnknownPreset(s.to_string()))?;
        Self::preset(k)
    }
}

/// A generated table with its true cluster of every object.
#[derive(Debug, Clone)]
pub struct LabeledTable {
    pub table: DistributionalTable,
    pub labels: Vec<usize>,
    pub n_clusters: usize,
    pub seed: u64,
}

fn draw<F: Fn(f64) -> bool>(
    rng: &mut ChaCha8Rng,
    law: GaussianSpec,
    spread: Spread,
    accept: F,
) -> Result<f64, SynthError> {
    let normal = Normal::new(law.mu, law.std_dev(spread))
        .map_err(|e| SynthError::InvalidSpec(e.to_string()))?;
    for _ in 0..MAX_REJECTIONS {
        let x = normal.sample(rng);
        if accept(x) {
            return Ok(x);
        }
    }
    Err(SynthError::InvalidSpec(format!(
        "law N({}, {}) rejected {MAX_REJECTIONS} consecutive draws",
        law.mu, law.b
    )))
}

/// Samples every object of `spec`, cluster by cluster, in a fixed order.
pub fn generate_scenario(spec: &ScenarioSpec, seed: u64) -> Result<LabeledTable, SynthError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n_clusters() * spec.objects_per_cluster;
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    let mut names = Vec::with_capacity(n);
    for (i, laws) in spec.clusters.iter().enumerate() {
        for k in 0..spec.objects_per_cluster {
            let mut row = Vec::with_capacity(laws.len());
            for l in laws {
                let gamma = draw(&mut rng, l.gamma, spec.spread, f64::is_finite)?;
                let eta = draw(&mut rng, l.eta, spec.spread, |x| x > 0.0)?;
                let delta = draw(&mut rng, l.delta, spec.spread, |x| x.abs() <= 1.0)?;
                row.push(Distribution::from(SkewLogistic::new(gamma, eta, delta)?));
            }
            rows.push(row);
            labels.push(i);
            names.push(format!("cl{}_{}", i + 1, k + 1));
        }
    }
    let table = DistributionalTable::new(rows, spec.variable_names.clone(), names)?;
    Ok(LabeledTable {
        table,
        labels,
        n_clusters: spec.n_clusters(),
        seed,
    })
}

/// Per-class SSE with position/dispersion split, WSSE, TSSE and QPIs.
pub fn sse_report(
    table: &DistributionalTable,
    labels: &[usize],
) -> Result<DispersionTable, SynthError> {
    let c = labels.iter().max().map_or(0, |m| m + 1);
    Ok(DispersionTable::crisp(table, labels, c)?)
}

/// Skew-logistic quantile `Q(t)`; errors outside `(0, 1)`.
pub fn skew_logistic_q(params: &SkewLogistic, t: f64) -> Result<f64, SynthError> {
    Ok(params.quantile(t)?)
}

/// `(dM, dV)` between two skew-logistic distributions in closed form.
pub fn closed_form_distance(p1: &SkewLogistic, p2: &SkewLogistic) -> Decomposition {
    p1.decompose(p2)
}

/// Weighted barycenter, which stays in the skew-logistic family.
pub fn closed_form_barycenter(
    weights: &[f64],
    params: &[SkewLogistic],
) -> Result<SkewLogistic, SynthError> {
    Ok(SkewLogistic::barycenter(weights, params)?)
}
