//! Fuzzy c-means (FCM) and adaptive-distance fuzzy c-means (AFCM) for
//! distributional tables.
//!
//! One iteration is Representation (prototypes as `u^m`-weighted
//! barycenters), Weighting (closed-form relevance weights, AFCM only) and
//! Allocation (memberships), after which the criterion is evaluated with the
//! freshest `G`, `Λ`, `U`. Each step is the exact minimizer of the criterion
//! in its block, so the trace never increases.

mod partition;
pub mod weights;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::distributional::{
    barycenter, decompose, wasserstein_sq, Decomposition, Distribution, DistributionError,
    DistributionalTable,
};

pub use partition::{init_partition, update_memberships, FuzzyPartition};
pub use weights::{registry, Dispersions, RelevanceWeights, Scheme, WeightUpdate, Weighting};

/// Clusters whose membership mass `Σ_k u_ik^m` falls below this abort the run.
pub const DEGENERATE_MASS: f64 = 1e-12;

/// Weight denominators are floored at this fraction of the total table
/// dispersion.
pub const DISPERSION_FLOOR: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClusteringError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("cluster {cluster} has degenerate membership mass {mass:e}")]
    DegenerateCluster { cluster: usize, mass: f64 },
    #[error("all {restarts} restarts failed; last error: {last}")]
    AllRestartsFailed { restarts: usize, last: String },
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convergence {
    /// `|J_t − J_{t−1}| < ε`.
    #[default]
    Absolute,
    /// `|J_t − J_{t−1}| < ε · |J_{t−1}|`.
    Relative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringConfig {
    pub clusters: usize,
    pub fuzzifier: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
    pub scheme: Scheme,
    pub convergence: Convergence,
}

impl ClusteringConfig {
    pub fn new(scheme: Scheme, clusters: usize) -> Self {
        Self {
            clusters,
            fuzzifier: 1.5,
            epsilon: 1e-5,
            max_iter: 100,
            restarts: 20,
            seed: 0,
            scheme,
            convergence: Convergence::Absolute,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn validate(&self, n_objects: usize) -> Result<(), ClusteringError> {
        if self.clusters < 2 {
            return Err(ClusteringError::InvalidConfig(format!(
                "need at least 2 clusters, got {}",
                self.clusters
            )));
        }
        if self.clusters > n_objects {
            return Err(ClusteringError::InvalidConfig(format!(
                "{} clusters for {n_objects} objects",
                self.clusters
            )));
        }
        if !(self.fuzzifier > 1.0 && self.fuzzifier.is_finite()) {
            return Err(ClusteringError::InvalidConfig(format!(
                "fuzzifier m must exceed 1, got {}",
                self.fuzzifier
            )));
        }
        if !(self.epsilon > 0.0) {
            return Err(ClusteringError::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.max_iter == 0 || self.restarts == 0 {
            return Err(ClusteringError::InvalidConfig(
                "max_iter and restarts must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `c × P` prototype distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct PrototypeSet {
    g: Vec<Vec<Distribution>>,
}

impl PrototypeSet {
    pub fn new(g: Vec<Vec<Distribution>>) -> Self {
        Self { g }
    }

    pub fn n_clusters(&self) -> usize {
        self.g.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Distribution {
        &self.g[i][j]
    }

    pub fn cluster(&self, i: usize) -> &[Distribution] {
        &self.g[i]
    }

    pub fn clusters(&self) -> &[Vec<Distribution>] {
        &self.g
    }
}

/// Representation step: `g_ij` is the barycenter of column `j` with
/// weights `u_ik^m`.
pub fn update_prototypes(
    table: &DistributionalTable,
    u: &FuzzyPartition,
    m: f64,
) -> Result<PrototypeSet, ClusteringError> {
    if u.n_objects() != table.n_objects() {
        return Err(ClusteringError::Shape(format!(
            "{} membership rows for {} objects",
            u.n_objects(),
            table.n_objects()
        )));
    }
    let columns: Vec<Vec<Distribution>> =
        (0..table.n_variables()).map(|j| table.column(j)).collect();
    let mut g = Vec::with_capacity(u.n_clusters());
    for i in 0..u.n_clusters() {
        let w: Vec<f64> = (0..u.n_objects()).map(|k| u.get(k, i).powf(m)).collect();
        let mass: f64 = w.iter().sum();
        if !(mass >= DEGENERATE_MASS) {
            return Err(ClusteringError::DegenerateCluster { cluster: i, mass });
        }
        let row = columns
            .iter()
            .map(|col| barycenter(&w, col))
            .collect::<Result<Vec<_>, _>>()?;
        g.push(row);
    }
    Ok(PrototypeSet::new(g))
}

/// `(dM, dV)` for every object, cluster and variable.
#[derive(Debug, Clone)]
pub struct ComponentDistances {
    n_objects: usize,
    n_clusters: usize,
    n_variables: usize,
    d: Vec<Decomposition>,
}

impl ComponentDistances {
    pub fn compute(table: &DistributionalTable, g: &PrototypeSet) -> Result<Self, ClusteringError> {
        let (n, c, p) = (table.n_objects(), g.n_clusters(), table.n_variables());
        let mut d = Vec::with_capacity(n * c * p);
        for k in 0..n {
            for i in 0..c {
                for j in 0..p {
                    d.push(decompose(table.cell(k, j), g.get(i, j))?);
                }
            }
        }
        Ok(Self {
            n_objects: n,
            n_clusters: c,
            n_variables: p,
            d,
        })
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> Decomposition {
        self.d[(k * self.n_clusters + i) * self.n_variables + j]
    }

    /// `N × c` adaptive distances `Σ_j λ_M dM + λ_V dV` (all `λ = 1` when
    /// `weights` is `None`).
    pub fn adaptive(&self, weights: Option<&RelevanceWeights>) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_objects * self.n_clusters);
        for k in 0..self.n_objects {
            for i in 0..self.n_clusters {
                let mut s = 0.0;
                for j in 0..self.n_variables {
                    let dec = self.get(k, i, j);
                    let (lm, lv) = weights.map_or((1.0, 1.0), |w| w.pair(i, j));
                    s += lm * dec.position + lv * dec.dispersion;
                }
                out.push(s);
            }
        }
        out
    }

    pub fn dispersions(&self, u: &FuzzyPartition, m: f64) -> Dispersions {
        let (c, p) = (self.n_clusters, self.n_variables);
        let mut position = vec![0.0; c * p];
        let mut dispersion = vec![0.0; c * p];
        for k in 0..self.n_objects {
            for i in 0..c {
                let w = u.get(k, i).powf(m);
                for j in 0..p {
                    let dec = self.get(k, i, j);
                    position[i * p + j] += w * dec.position;
                    dispersion[i * p + j] += w * dec.dispersion;
                }
            }
        }
        Dispersions {
            n_clusters: c,
            n_variables: p,
            position,
            dispersion,
        }
    }
}

fn check_weights(
    weights: Option<&RelevanceWeights>,
    c: usize,
    p: usize,
) -> Result<(), ClusteringError> {
    if let Some(w) = weights {
        if w.n_clusters() != c || w.n_variables() != p {
            return Err(ClusteringError::Shape(format!(
                "weights are for {}×{} (clusters × variables), data is {c}×{p}",
                w.n_clusters(),
                w.n_variables()
            )));
        }
    }
    Ok(())
}

/// Adaptive distance between object row `y` and prototype `i`.
pub fn adaptive_distance(
    y: &[Distribution],
    g: &PrototypeSet,
    i: usize,
    weights: Option<&RelevanceWeights>,
) -> Result<f64, ClusteringError> {
    let p = y.len();
    if g.cluster(i).len() != p {
        return Err(ClusteringError::Shape(format!(
            "object has {p} variables, prototype has {}",
            g.cluster(i).len()
        )));
    }
    check_weights(weights, g.n_clusters(), p)?;
    let mut s = 0.0;
    for (j, (a, b)) in y.iter().zip(g.cluster(i)).enumerate() {
        let dec = decompose(a, b)?;
        let (lm, lv) = weights.map_or((1.0, 1.0), |w| w.pair(i, j));
        s += lm * dec.position + lv * dec.dispersion;
    }
    Ok(s)
}

/// Adaptive distance between two objects, measured with cluster `i`'s
/// weights.
pub fn object_distance(
    a: &[Distribution],
    b: &[Distribution],
    i: usize,
    weights: Option<&RelevanceWeights>,
) -> Result<f64, ClusteringError> {
    let mut s = 0.0;
    for (j, (x, y)) in a.iter().zip(b).enumerate() {
        let dec = decompose(x, y)?;
        let (lm, lv) = weights.map_or((1.0, 1.0), |w| w.pair(i, j));
        s += lm * dec.position + lv * dec.dispersion;
    }
    Ok(s)
}

/// Weighting step. Returns `None` for FCM.
pub fn update_weights(
    table: &DistributionalTable,
    u: &FuzzyPartition,
    g: &PrototypeSet,
    m: f64,
    scheme: Scheme,
) -> Result<Option<WeightUpdate>, ClusteringError> {
    let dist = ComponentDistances::compute(table, g)?;
    let floor = dispersion_floor(table)?;
    Ok(registry()
        .strategy(scheme)
        .update(&dist.dispersions(u, m), floor))
}

/// `J = Σ_i Σ_k u_ik^m d(y_k, g_i | Λ)`.
pub fn objective(
    table: &DistributionalTable,
    u: &FuzzyPartition,
    g: &PrototypeSet,
    weights: Option<&RelevanceWeights>,
    m: f64,
) -> Result<f64, ClusteringError> {
    check_weights(weights, g.n_clusters(), table.n_variables())?;
    let dist = ComponentDistances::compute(table, g)?;
    Ok(criterion(&dist.adaptive(weights), u, m))
}

fn criterion(distances: &[f64], u: &FuzzyPartition, m: f64) -> f64 {
    distances
        .iter()
        .zip(u.as_slice())
        .map(|(d, v)| v.powf(m) * d)
        .sum()
}

/// Total table dispersion `Σ_j Σ_k d²(y_kj, ȳ_j)` around the unweighted
/// column barycenters, scaled by [`DISPERSION_FLOOR`].
pub fn dispersion_floor(table: &DistributionalTable) -> Result<f64, ClusteringError> {
    let w = vec![1.0; table.n_objects()];
    let mut total = 0.0;
    for j in 0..table.n_variables() {
        let col = table.column(j);
        let center = barycenter(&w, &col)?;
        for d in &col {
            total += wasserstein_sq(d, &center)?;
        }
    }
    Ok((DISPERSION_FLOOR * total).max(f64::MIN_POSITIVE))
}

/// Summary of one restart.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartSummary {
    pub objective: Option<f64>,
    pub iterations: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ClusteringResult {
    pub scheme: Scheme,
    pub fuzzifier: f64,
    pub partition: FuzzyPartition,
    pub prototypes: PrototypeSet,
    /// `None` for FCM.
    pub weights: Option<RelevanceWeights>,
    /// Criterion after each iteration.
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Index of the winning restart.
    pub restart_index: usize,
    /// Weighting steps of the winning run that hit the dispersion floor.
    pub floored_denominators: usize,
    /// Largest constraint-product violation seen across the winning run's
    /// weighting steps.
    pub max_constraint_violation: f64,
    pub restarts: Vec<RestartSummary>,
}

impl ClusteringResult {
    pub fn objective(&self) -> f64 {
        *self.objective_trace.last().expect("trace is never empty")
    }

    pub fn labels(&self) -> Vec<usize> {
        self.partition.harden()
    }
}

struct Run {
    partition: FuzzyPartition,
    prototypes: PrototypeSet,
    weights: Option<RelevanceWeights>,
    trace: Vec<f64>,
    converged: bool,
    floored: usize,
    max_violation: f64,
}

/// Runs the alternating solver from a given starting partition.
fn run_from(
    table: &DistributionalTable,
    config: &ClusteringConfig,
    mut u: FuzzyPartition,
    floor: f64,
) -> Result<Run, ClusteringError> {
    let m = config.fuzzifier;
    let c = config.clusters;
    let strategy = registry().strategy(config.scheme);
    let mut weights = config
        .scheme
        .is_adaptive()
        .then(|| RelevanceWeights::ones(config.scheme, c, table.n_variables()));
    let mut trace = Vec::new();
    let mut floored = 0;
    let mut max_violation: f64 = 0.0;
    let mut converged = false;
    let mut prototypes;
    loop {
        prototypes = update_prototypes(table, &u, m)?;
        let dist = ComponentDistances::compute(table, &prototypes)?;
        if let Some(up) = strategy.update(&dist.dispersions(&u, m), floor) {
            floored += up.floored;
            max_violation = max_violation.max(up.weights.max_constraint_violation());
            weights = Some(up.weights);
        }
        let d = dist.adaptive(weights.as_ref());
        u = update_memberships(&d, c, m);
        let j = criterion(&d, &u, m);
        let prev = trace.last().copied();
        trace.push(j);
        if let Some(prev) = prev {
            let delta = (j - prev).abs();
            let tol = match config.convergence {
                Convergence::Absolute => config.epsilon,
                Convergence::Relative => config.epsilon * prev.abs(),
            };
            if delta < tol {
                converged = true;
                break;
            }
        }
        if trace.len() >= config.max_iter {
            break;
        }
    }
    Ok(Run {
        partition: u,
        prototypes,
        weights,
        trace,
        converged,
        floored,
        max_violation,
    })
}

/// RNG for restart `r`: one ChaCha stream per restart under the user seed.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Single run from an explicit starting partition.
pub fn fit_from(
    table: &DistributionalTable,
    config: &ClusteringConfig,
    init: FuzzyPartition,
) -> Result<ClusteringResult, ClusteringError> {
    config.validate(table.n_objects())?;
    if init.n_objects() != table.n_objects() || init.n_clusters() != config.clusters {
        return Err(ClusteringError::Shape(
            "initial partition does not match table and cluster count".into(),
        ));
    }
    let floor = dispersion_floor(table)?;
    let run = run_from(table, config, init, floor)?;
    let summary = RestartSummary {
        objective: run.trace.last().copied(),
        iterations: run.trace.len(),
        error: None,
    };
    Ok(assemble(config, run, 0, vec![summary]))
}

/// Multi-start fit: `restarts` independent random initializations, the run
/// with the smallest final criterion wins (ties to the lower index).
pub fn fit(
    table: &DistributionalTable,
    config: &ClusteringConfig,
) -> Result<ClusteringResult, ClusteringError> {
    config.validate(table.n_objects())?;
    let floor = dispersion_floor(table)?;
    let runs: Vec<Result<Run, ClusteringError>> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = restart_rng(config.seed, r);
            let init = init_partition(&mut rng, table.n_objects(), config.clusters);
            run_from(table, config, init, floor)
        })
        .collect();

    let summaries: Vec<RestartSummary> = runs
        .iter()
        .map(|r| match r {
            Ok(run) => RestartSummary {
                objective: run.trace.last().copied(),
                iterations: run.trace.len(),
                error: None,
            },
            Err(e) => RestartSummary {
                objective: None,
                iterations: 0,
                error: Some(e.to_string()),
            },
        })
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for (r, s) in summaries.iter().enumerate() {
        if let Some(j) = s.objective {
            if best.is_none_or(|(_, b)| j < b) {
                best = Some((r, j));
            }
        }
    }
    let Some((winner, _)) = best else {
        let last = summaries
            .iter()
            .rev()
            .find_map(|s| s.error.clone())
            .unwrap_or_default();
        return Err(ClusteringError::AllRestartsFailed {
            restarts: config.restarts,
            last,
        });
    };
    let run = runs
        .into_iter()
        .nth(winner)
        .expect("winner index in range")
        .expect("winner succeeded");
    Ok(assemble(config, run, winner, summaries))
}

fn assemble(
    config: &ClusteringConfig,
    run: Run,
    restart_index: usize,
    restarts: Vec<RestartSummary>,
) -> ClusteringResult {
    ClusteringResult {
        scheme: config.scheme,
        fuzzifier: config.fuzzifier,
        iterations: run.trace.len(),
        partition: run.partition,
        prototypes: run.prototypes,
        weights: run.weights,
        objective_trace: run.trace,
        converged: run.converged,
        restart_index,
        floored_denominators: run.floored,
        max_constraint_violation: run.max_violation,
        restarts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributional::SkewLogistic;

    fn sl(g: f64, e: f64, d: f64) -> Distribution {
        SkewLogistic::new(g, e, d).unwrap().into()
    }

    fn two_groups() -> DistributionalTable {
        let mut rows = Vec::new();
        for k in 0..6 {
            let jitter = 1e-3 * k as f64;
            rows.push(vec![sl(jitter, 1.0, 0.1), sl(5.0 + jitter, 2.0, 0.0)]);
        }
        for k in 0..6 {
            let jitter = 1e-3 * k as f64;
            rows.push(vec![
                sl(20.0 + jitter, 1.0, 0.1),
                sl(-5.0 - jitter, 2.0, 0.0),
            ]);
        }
        DistributionalTable::from_rows(rows).unwrap()
    }

    #[test]
    fn config_validation() {
        let t = two_groups();
        assert!(ClusteringConfig::new(Scheme::Fcm, 1).validate(12).is_err());
        assert!(ClusteringConfig::new(Scheme::Fcm, 13).validate(12).is_err());
        let mut cfg = ClusteringConfig::new(Scheme::Fcm, 2);
        cfg.fuzzifier = 1.0;
        assert!(fit(&t, &cfg).is_err());
        cfg.fuzzifier = 1.5;
        cfg.epsilon = 0.0;
        assert!(cfg.validate(12).is_err());
    }

    #[test]
    fn crisp_prototype_is_member_barycenter() {
        let t = two_groups();
        let labels: Vec<usize> = (0..12).map(|k| usize::from(k >= 6)).collect();
        let u = FuzzyPartition::crisp(&labels, 2).unwrap();
        let g = update_prototypes(&t, &u, 1.5).unwrap();
        let w: Vec<f64> = (0..6).map(|_| 1.0).collect();
        let members: Vec<Distribution> = (0..6).map(|k| t.cell(k, 0).clone()).collect();
        assert_eq!(g.get(0, 0), &barycenter(&w, &members).unwrap());
    }

    #[test]
    fn identical_objects_give_identical_prototypes() {
        let d = sl(1.0, 2.0, 0.3);
        let t = DistributionalTable::from_rows(vec![vec![d.clone()], vec![d.clone()]]).unwrap();
        let u = FuzzyPartition::new(vec![vec![0.3, 0.7], vec![0.9, 0.1]]).unwrap();
        let g = update_prototypes(&t, &u, 1.5).unwrap();
        for i in 0..2 {
            let s = g.get(i, 0).as_skew_logistic().unwrap();
            let e = d.as_skew_logistic().unwrap();
            assert!((s.gamma() - e.gamma()).abs() < 1e-14);
            assert!((s.eta() - e.eta()).abs() < 1e-14);
            assert!((s.delta() - e.delta()).abs() < 1e-14);
        }
    }

    #[test]
    fn empty_cluster_is_degenerate() {
        let t = two_groups();
        let labels = vec![0; 12];
        let u = FuzzyPartition::crisp(&labels, 2).unwrap();
        assert!(matches!(
            update_prototypes(&t, &u, 1.5),
            Err(ClusteringError::DegenerateCluster { cluster: 1, .. })
        ));
    }

    #[test]
    fn unit_weights_reduce_to_plain_distance() {
        let t = two_groups();
        let u = init_partition(&mut restart_rng(3, 0), 12, 2);
        let g = update_prototypes(&t, &u, 1.5).unwrap();
        let ones = RelevanceWeights::ones(Scheme::ClusterJoint, 2, 2);
        for k in 0..12 {
            for i in 0..2 {
                let plain: f64 = (0..2)
                    .map(|j| wasserstein_sq(t.cell(k, j), g.get(i, j)).unwrap())
                    .sum();
                let a = adaptive_distance(t.row(k), &g, i, Some(&ones)).unwrap();
                let b = adaptive_distance(t.row(k), &g, i, None).unwrap();
                assert!((a - plain).abs() < 1e-12 * plain.max(1.0));
                assert_eq!(a, b);
            }
        }
        let j_fcm = objective(&t, &u, &g, None, 1.5).unwrap();
        let j_ones = objective(&t, &u, &g, Some(&ones), 1.5).unwrap();
        assert_eq!(j_fcm, j_ones);
    }

    #[test]
    fn component_weights_example() {
        // P = 1, dM = 1, dV = 4, λ_M = 2, λ_V = 0.5 → 4
        let y = vec![sl(0.0, 1.0, 0.0)];
        let g_cell = {
            // same η·δ, scale chosen so dV = 4: (π²/12)(Δη)² = 4
            let d_eta = (4.0 * 12.0 / (std::f64::consts::PI.powi(2))).sqrt();
            sl(1.0, 1.0 + d_eta, 0.0)
        };
        let g = PrototypeSet::new(vec![vec![g_cell.clone()], vec![g_cell]]);
        let w =
            RelevanceWeights::from_matrix(Scheme::GlobalComponent, 2, vec![vec![2.0], vec![0.5]])
                .unwrap();
        let d = adaptive_distance(&y, &g, 0, Some(&w)).unwrap();
        assert!((d - 4.0).abs() < 1e-12, "{d}");
        let bad = RelevanceWeights::ones(Scheme::GlobalComponent, 3, 1);
        assert!(adaptive_distance(&y, &g, 0, Some(&bad)).is_err());
    }

    #[test]
    fn separated_groups_recovered_by_every_scheme() {
        let t = two_groups();
        for scheme in Scheme::ALL {
            let cfg = ClusteringConfig::new(scheme, 2)
                .with_seed(11)
                .with_restarts(5);
            let res = fit(&t, &cfg).unwrap();
            let labels = res.labels();
            assert!(labels[..6].iter().all(|&l| l == labels[0]), "{scheme}");
            assert!(labels[6..].iter().all(|&l| l == labels[6]), "{scheme}");
            assert_ne!(labels[0], labels[6], "{scheme}");
        }
    }

    #[test]
    fn fit_is_deterministic() {
        let t = two_groups();
        let cfg = ClusteringConfig::new(Scheme::ClusterJoint, 2)
            .with_seed(5)
            .with_restarts(4);
        let a = fit(&t, &cfg).unwrap();
        let b = fit(&t, &cfg).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.objective_trace, b.objective_trace);
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.restart_index, b.restart_index);
    }

    #[test]
    fn fcm_result_has_no_weights() {
        let t = two_groups();
        let res = fit(&t, &ClusteringConfig::new(Scheme::Fcm, 2).with_restarts(2)).unwrap();
        assert!(res.weights.is_none());
        let res = fit(
            &t,
            &ClusteringConfig::new(Scheme::ClusterJoint, 2).with_restarts(2),
        )
        .unwrap();
        assert_eq!(res.weights.unwrap().len(), 2 * 2 * 2);
    }
}
