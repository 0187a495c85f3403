use rand::Rng;

use super::ClusteringError;

/// `N × c` membership matrix, rows on the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPartition {
    n_objects: usize,
    n_clusters: usize,
    u: Vec<f64>,
}

impl FuzzyPartition {
    /// Validates rows (entries in `[0, 1]`, sums within `1e-9` of 1).
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, ClusteringError> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || c == 0 || rows.iter().any(|r| r.len() != c) {
            return Err(ClusteringError::Shape(
                "membership rows must be non-empty and of equal length".into(),
            ));
        }
        for (k, r) in rows.iter().enumerate() {
            if r.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(ClusteringError::Shape(format!(
                    "membership row {k} has entries outside [0, 1]"
                )));
            }
            let s: f64 = r.iter().sum();
            if (s - 1.0).abs() > 1e-9 {
                return Err(ClusteringError::Shape(format!(
                    "membership row {k} sums to {s}"
                )));
            }
        }
        Ok(Self {
            n_objects: rows.len(),
            n_clusters: c,
            u: rows.into_iter().flatten().collect(),
        })
    }

    /// One-hot partition from crisp labels in `0..c`.
    pub fn crisp(labels: &[usize], c: usize) -> Result<Self, ClusteringError> {
        if labels.iter().any(|&l| l >= c) {
            return Err(ClusteringError::Shape(format!("labels must lie in 0..{c}")));
        }
        let mut u = vec![0.0; labels.len() * c];
        for (k, &l) in labels.iter().enumerate() {
            u[k * c + l] = 1.0;
        }
        Ok(Self {
            n_objects: labels.len(),
            n_clusters: c,
            u,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    /// Membership of object `k` in cluster `i`.
    pub fn get(&self, k: usize, i: usize) -> f64 {
        self.u[k * self.n_clusters + i]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.u[k * self.n_clusters..(k + 1) * self.n_clusters]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.u.chunks(self.n_clusters)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.u
    }

    /// Argmax per object; ties go to the lowest cluster index.
    pub fn harden(&self) -> Vec<usize> {
        self.rows()
            .map(|r| {
                let mut best = 0;
                for (i, &v) in r.iter().enumerate().skip(1) {
                    if v > r[best] {
                        best = i;
                    }
                }
                best
            })
            .collect()
    }

    /// `Σ_k u_ik^m` for each cluster.
    pub fn mass(&self, m: f64) -> Vec<f64> {
        let mut mass = vec![0.0; self.n_clusters];
        for r in self.rows() {
            for (acc, &v) in mass.iter_mut().zip(r) {
                *acc += v.powf(m);
            }
        }
        mass
    }
}

/// Random starting partition: `c` uniform positive draws per object,
/// normalized to sum to one.
pub fn init_partition<R: Rng + ?Sized>(rng: &mut R, n: usize, c: usize) -> FuzzyPartition {
    let mut u = Vec::with_capacity(n * c);
    for _ in 0..n {
        let start = u.len();
        // 1 − U[0, 1) lies in (0, 1]
        u.extend((0..c).map(|_| 1.0 - rng.random::<f64>()));
        let s: f64 = u[start..].iter().sum();
        for v in &mut u[start..] {
            *v /= s;
        }
    }
    FuzzyPartition {
        n_objects: n,
        n_clusters: c,
        u,
    }
}

/// Allocation step. `distances` is `N × c`, row-major.
///
/// `u_ik = [Σ_h (d_ik / d_hk)^{1/(m−1)}]^{-1}`; an object at zero distance
/// from a set `A` of prototypes is shared equally among `A`.
pub fn update_memberships(distances: &[f64], c: usize, m: f64) -> FuzzyPartition {
    assert!(
        c > 0 && distances.len().is_multiple_of(c),
        "distance matrix shape"
    );
    let n = distances.len() / c;
    let exponent = 1.0 / (m - 1.0);
    let mut u = vec![0.0; n * c];
    for (d, out) in distances.chunks(c).zip(u.chunks_mut(c)) {
        let zeros = d.iter().filter(|&&x| x <= 0.0).count();
        if zeros > 0 {
            let share = 1.0 / zeros as f64;
            for (o, &x) in out.iter_mut().zip(d) {
                *o = if x <= 0.0 { share } else { 0.0 };
            }
            continue;
        }
        // (d_ik / d_hk)^e evaluated as exp(−e (ln d_ik − min_h ln d_hk)), O(c)
        let lmin = d.iter().map(|x| x.ln()).fold(f64::INFINITY, f64::min);
        for (o, &x) in out.iter_mut().zip(d) {
            *o = (-exponent * (x.ln() - lmin)).exp();
        }
        let s: f64 = out.iter().sum();
        for o in out.iter_mut() {
            *o /= s;
        }
    }
    FuzzyPartition {
        n_objects: n,
        n_clusters: c,
        u,
    }
}
