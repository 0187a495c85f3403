//! Relevance weights and the weighting strategies that compute them.
//!
//! Every adaptive scheme minimizes `Σ_i Σ_k u_ik^m Σ_j (λ_M dM + λ_V dV)`
//! under a family of product-to-one constraints. With `G` and `U` fixed the
//! criterion is linear in `λ`, so each constraint group `{λ_l}` with
//! dispersions `{D_l}` has the closed-form minimizer
//! `λ_l = (∏_h D_h)^{1/n} / D_l`, `n = |group|`. The schemes differ only in
//! how the `λ`s and the dispersion sums are grouped.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::ClusteringError;

/// The seven clustering variants: plain FCM and the six product-to-one
/// weighting families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "fcm")]
    Fcm,
    /// One weight per variable (Π-a).
    #[serde(rename = "pi-a")]
    GlobalVariable,
    /// One weight per variable component, constrained per component (Π-b).
    #[serde(rename = "pi-b")]
    GlobalComponent,
    /// One weight per cluster and variable (Π-c).
    #[serde(rename = "pi-c")]
    ClusterVariable,
    /// Per cluster and component, constrained per component (Π-d).
    #[serde(rename = "pi-d")]
    ClusterComponent,
    /// Per component, one joint constraint over both components (Π-e).
    #[serde(rename = "pi-e")]
    GlobalJoint,
    /// Per cluster and component, one joint constraint per cluster (Π-f).
    #[serde(rename = "pi-f")]
    ClusterJoint,
}

impl Scheme {
    pub const ALL: [Scheme; 7] = [
        Scheme::Fcm,
        Scheme::GlobalVariable,
        Scheme::GlobalComponent,
        Scheme::ClusterVariable,
        Scheme::ClusterComponent,
        Scheme::GlobalJoint,
        Scheme::ClusterJoint,
    ];

    /// CLI name: `fcm`, `pi-a` … `pi-f`.
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Fcm => "fcm",
            Scheme::GlobalVariable => "pi-a",
            Scheme::GlobalComponent => "pi-b",
            Scheme::ClusterVariable => "pi-c",
            Scheme::ClusterComponent => "pi-d",
            Scheme::GlobalJoint => "pi-e",
            Scheme::ClusterJoint => "pi-f",
        }
    }

    /// Criterion label: `FCM`, `GV`, `GC`, `CwV`, `CwC`, `GC-joint`, `CwC-joint`.
    pub fn criterion(self) -> &'static str {
        match self {
            Scheme::Fcm => "FCM",
            Scheme::GlobalVariable => "GV",
            Scheme::GlobalComponent => "GC",
            Scheme::ClusterVariable => "CwV",
            Scheme::ClusterComponent => "CwC",
            Scheme::GlobalJoint => "GC-joint",
            Scheme::ClusterJoint => "CwC-joint",
        }
    }

    pub fn is_adaptive(self) -> bool {
        self != Scheme::Fcm
    }

    pub fn per_cluster(self) -> bool {
        matches!(
            self,
            Scheme::ClusterVariable | Scheme::ClusterComponent | Scheme::ClusterJoint
        )
    }

    /// Separate weights for the position and dispersion components.
    pub fn splits_components(self) -> bool {
        matches!(
            self,
            Scheme::GlobalComponent
                | Scheme::ClusterComponent
                | Scheme::GlobalJoint
                | Scheme::ClusterJoint
        )
    }

    /// Rows of the `Λ` matrix for `c` clusters (it always has `P` columns).
    pub fn weight_rows(self, c: usize) -> usize {
        match self {
            Scheme::Fcm => 0,
            Scheme::GlobalVariable => 1,
            Scheme::ClusterVariable => c,
            Scheme::GlobalComponent | Scheme::GlobalJoint => 2,
            Scheme::ClusterComponent | Scheme::ClusterJoint => 2 * c,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = ClusteringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        registry()
            .get(s)
            .map(|w| w.scheme())
            .ok_or_else(|| ClusteringError::UnknownScheme(s.to_string()))
    }
}

/// The `Λ` matrix, `weight_rows(c) × P`, row-major.
///
/// Row layout: global schemes use row 0 (and row 1 for the dispersion
/// component); cluster-wise schemes use row `i` for cluster `i`, or rows
/// `2i` / `2i + 1` when the components are split.
#[derive(Debug, Clone, PartialEq)]
pub struct RelevanceWeights {
    scheme: Scheme,
    n_clusters: usize,
    n_variables: usize,
    values: Vec<f64>,
}

impl RelevanceWeights {
    /// All-ones weights, the starting point of every run.
    pub fn ones(scheme: Scheme, c: usize, p: usize) -> Self {
        Self {
            scheme,
            n_clusters: c,
            n_variables: p,
            values: vec![1.0; scheme.weight_rows(c) * p],
        }
    }

    pub fn from_matrix(
        scheme: Scheme,
        c: usize,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self, ClusteringError> {
        let rows = scheme.weight_rows(c);
        let p = matrix.first().map_or(0, Vec::len);
        if matrix.len() != rows || matrix.iter().any(|r| r.len() != p) || p == 0 {
            return Err(ClusteringError::Shape(format!(
                "{} expects a {rows}×P weight matrix",
                scheme.name()
            )));
        }
        if matrix
            .iter()
            .flatten()
            .any(|v| !(v.is_finite() && *v > 0.0))
        {
            return Err(ClusteringError::Shape("weights must be positive".into()));
        }
        Ok(Self {
            scheme,
            n_clusters: c,
            n_variables: p,
            values: matrix.into_iter().flatten().collect(),
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn n_variables(&self) -> usize {
        self.n_variables
    }

    pub fn rows(&self) -> usize {
        self.scheme.weight_rows(self.n_clusters)
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks(self.n_variables)
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn at(&self, row: usize, j: usize) -> f64 {
        self.values[row * self.n_variables + j]
    }

    /// `(λ_M, λ_V)` applied to variable `j` for cluster `i`.
    pub fn pair(&self, i: usize, j: usize) -> (f64, f64) {
        match (self.scheme.per_cluster(), self.scheme.splits_components()) {
            (false, false) => {
                let v = self.at(0, j);
                (v, v)
            }
            (true, false) => {
                let v = self.at(i, j);
                (v, v)
            }
            (false, true) => (self.at(0, j), self.at(1, j)),
            (true, true) => (self.at(2 * i, j), self.at(2 * i + 1, j)),
        }
    }

    /// Product of each constraint group; all equal 1 for a feasible `Λ`.
    pub fn constraint_products(&self) -> Vec<f64> {
        let p = self.n_variables;
        let row_prod = |r: usize| (0..p).map(|j| self.at(r, j)).product::<f64>();
        match self.scheme {
            Scheme::Fcm => Vec::new(),
            Scheme::GlobalVariable => vec![row_prod(0)],
            Scheme::ClusterVariable => (0..self.n_clusters).map(row_prod).collect(),
            Scheme::GlobalComponent => vec![row_prod(0), row_prod(1)],
            Scheme::ClusterComponent => (0..2 * self.n_clusters).map(row_prod).collect(),
            Scheme::GlobalJoint => vec![row_prod(0) * row_prod(1)],
            Scheme::ClusterJoint => (0..self.n_clusters)
                .map(|i| row_prod(2 * i) * row_prod(2 * i + 1))
                .collect(),
        }
    }

    /// Largest `|∏ − 1|` over the constraint groups.
    pub fn max_constraint_violation(&self) -> f64 {
        self.constraint_products()
            .into_iter()
            .map(|p| (p - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Membership-weighted within-cluster dispersion sums,
/// `Σ_k u_ik^m dM_ik,j` and `Σ_k u_ik^m dV_ik,j`, each `c × P`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dispersions {
    pub n_clusters: usize,
    pub n_variables: usize,
    pub position: Vec<f64>,
    pub dispersion: Vec<f64>,
}

impl Dispersions {
    pub fn position(&self, i: usize, j: usize) -> f64 {
        self.position[i * self.n_variables + j]
    }

    pub fn dispersion(&self, i: usize, j: usize) -> f64 {
        self.dispersion[i * self.n_variables + j]
    }

    fn global_position(&self, j: usize) -> f64 {
        (0..self.n_clusters).map(|i| self.position(i, j)).sum()
    }

    fn global_dispersion(&self, j: usize) -> f64 {
        (0..self.n_clusters).map(|i| self.dispersion(i, j)).sum()
    }
}

/// Output of one weighting step.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightUpdate {
    pub weights: RelevanceWeights,
    /// How many denominators were raised to the floor.
    pub floored: usize,
}

/// A weighting strategy, selected by name through [`registry`].
pub trait Weighting: Send + Sync {
    fn scheme(&self) -> Scheme;

    /// Closed-form weights for the given dispersions; `None` for FCM.
    /// Denominators below `floor` are clamped to it.
    fn update(&self, dispersions: &Dispersions, floor: f64) -> Option<WeightUpdate>;
}

/// `λ_l = exp(mean_h ln D_h − ln D_l)` over one constraint group.
fn geometric_ratio(denominators: &mut [f64], floor: f64, floored: &mut usize) {
    for d in denominators.iter_mut() {
        if !(*d >= floor) {
            *d = floor;
            *floored += 1;
        }
    }
    let mean_log = denominators.iter().map(|d| d.ln()).sum::<f64>() / denominators.len() as f64;
    for d in denominators.iter_mut() {
        *d = (mean_log - d.ln()).exp();
    }
}

fn finish(scheme: Scheme, c: usize, p: usize, rows: Vec<Vec<f64>>, floored: usize) -> WeightUpdate {
    let values: Vec<f64> = rows.into_iter().flatten().collect();
    debug_assert_eq!(values.len(), scheme.weight_rows(c) * p);
    WeightUpdate {
        weights: RelevanceWeights {
            scheme,
            n_clusters: c,
            n_variables: p,
            values,
        },
        floored,
    }
}

struct Unweighted;

impl Weighting for Unweighted {
    fn scheme(&self) -> Scheme {
        Scheme::Fcm
    }

    fn update(&self, _: &Dispersions, _: f64) -> Option<WeightUpdate> {
        None
    }
}

struct GlobalVariable;

impl Weighting for GlobalVariable {
    fn scheme(&self) -> Scheme {
        Scheme::GlobalVariable
    }

    fn update(&self, d: &Dispersions, floor: f64) -> Option<WeightUpdate> {
        let p = d.n_variables;
        let mut floored = 0;
        let mut row: Vec<f64> = (0..p)
            .map(|j| d.global_position(j) + d.global_dispersion(j))
            .collect();
        geometric_ratio(&mut row, floor, &mut floored);
        Some(finish(self.scheme(), d.n_clusters, p, vec![row], floored))
    }
}

struct ClusterVariable;

impl Weighting for ClusterVariable {
    fn scheme(&self) -> Scheme {
        Scheme::ClusterVariable
    }

    fn update(&self, d: &Dispersions, floor: f64) -> Option<WeightUpdate> {
        let p = d.n_variables;
        let mut floored = 0;
        let rows = (0..d.n_clusters)
            .map(|i| {
                let mut row: Vec<f64> = (0..p)
                    .map(|j| d.position(i, j) + d.dispersion(i, j))
                    .collect();
                geometric_ratio(&mut row, floor, &mut floored);
                row
            })
            .collect();
        Some(finish(self.scheme(), d.n_clusters, p, rows, floored))
    }
}

struct GlobalComponent;

impl Weighting for GlobalComponent {
    fn scheme(&self) -> Scheme {
        Scheme::GlobalComponent
    }

    fn update(&self, d: &Dispersions, floor: f64) -> Option<WeightUpdate> {
        let p = d.n_variables;
        let mut floored = 0;
        let mut m: Vec<f64> = (0..p).map(|j| d.global_position(j)).collect();
        let mut v: Vec<f64> = (0..p).map(|j| d.global_dispersion(j)).collect();
        geometric_ratio(&mut m, floor, &mut floored);
        geometric_ratio(&mut v, floor, &mut floored);
        Some(finish(self.scheme(), d.n_clusters, p, vec![m, v], floored))
    }
}

struct ClusterComponent;

impl Weighting for ClusterComponent {
    fn scheme(&self) -> Scheme {
        Scheme::ClusterComponent
    }

    fn update(&self, d: &Dispersions, floor: f64) -> Option<WeightUpdate> {
        let p = d.n_variables;
        let mut floored = 0;
        let mut rows = Vec::with_capacity(2 * d.n_clusters);
        for i in 0..d.n_clusters {
            let mut m: Vec<f64> = (0..p).map(|j| d.position(i, j)).collect();
            let mut v: Vec<f64> = (0..p).map(|j| d.dispersion(i, j)).collect();
            geometric_ratio(&mut m, floor, &mut floored);
            geometric_ratio(&mut v, floor, &mut floored);
            rows.push(m);
            rows.push(v);
        }
        Some(finish(self.scheme(), d.n_clusters, p, rows, floored))
    }
}

struct GlobalJoint;

impl Weighting for GlobalJoint {
    fn scheme(&self) -> Scheme {
        Scheme::GlobalJoint
    }

    fn update(&self, d: &Dispersions, floor: f64) -> Option<WeightUpdate> {
        let p = d.n_variables;
        let mut floored = 0;
        let mut group: Vec<f64> = (0..p)
            .map(|j| d.global_position(j))
            .chain((0..p).map(|j| d.global_dispersion(j)))
            .collect();
        geometric_ratio(&mut group, floor, &mut floored);
        let v = group.split_off(p);
        Some(finish(
            self.scheme(),
            d.n_clusters,
            p,
            vec![group, v],
            floored,
        ))
    }
}

struct ClusterJoint;

impl Weighting for ClusterJoint {
    fn scheme(&self) -> Scheme {
        Scheme::ClusterJoint
    }

    fn update(&self, d: &Dispersions, floor: f64) -> Option<WeightUpdate> {
        let p = d.n_variables;
        let mut floored = 0;
        let mut rows = Vec::with_capacity(2 * d.n_clusters);
        for i in 0..d.n_clusters {
            let mut group: Vec<f64> = (0..p)
                .map(|j| d.position(i, j))
                .chain((0..p).map(|j| d.dispersion(i, j)))
                .collect();
            geometric_ratio(&mut group, floor, &mut floored);
            let v = group.split_off(p);
            rows.push(group);
            rows.push(v);
        }
        Some(finish(self.scheme(), d.n_clusters, p, rows, floored))
    }
}

/// Name-keyed collection of weighting strategies.
pub struct Registry {
    entries: Vec<(&'static str, Box<dyn Weighting>)>,
}

impl Registry {
    fn builtin() -> Self {
        let strategies: Vec<Box<dyn Weighting>> = vec![
            Box::new(Unweighted),
            Box::new(GlobalVariable),
            Box::new(GlobalComponent),
            Box::new(ClusterVariable),
            Box::new(ClusterComponent),
            Box::new(GlobalJoint),
            Box::new(ClusterJoint),
        ];
        Self {
            entries: strategies
                .into_iter()
                .map(|s| (s.scheme().name(), s))
                .collect(),
        }
    }

    /// Looks a strategy up by CLI name (case-insensitive, `pi_a` and `pia`
    /// accepted for `pi-a`).
    pub fn get(&self, name: &str) -> Option<&dyn Weighting> {
        let key = name.trim().to_ascii_lowercase().replace('_', "-");
        let key = match key.as_str() {
            k if k.len() == 3 && k.starts_with("pi") => format!("pi-{}", &k[2..]),
            _ => key,
        };
        self.entries
            .iter()
            .find(|(n, _)| *n == key)
            .map(|(_, s)| s.as_ref())
    }

    pub fn strategy(&self, scheme: Scheme) -> &dyn Weighting {
        self.entries
            .iter()
            .find(|(_, s)| s.scheme() == scheme)
            .map(|(_, s)| s.as_ref())
            .expect("every scheme is registered")
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|(n, _)| *n)
    }
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Registry::builtin)
}
