use crate::clustering::{ComponentDistances, FuzzyPartition, PrototypeSet, RelevanceWeights};
use crate::distributional::{decompose, Decomposition, DistributionalTable};

use super::ValidityError;

/// Default exponent on `u_1st − u_2nd` in the fuzzy silhouette.
pub const SILHOUETTE_ALPHA: f64 = 1.0;

/// `PC = (1/N) Σ_k Σ_i u_ik²`.
pub fn partition_coefficient(u: &FuzzyPartition) -> f64 {
    u.as_slice().iter().map(|v| v * v).sum::<f64>() / u.n_objects() as f64
}

/// `PE = −(1/N) Σ_k Σ_i u_ik ln u_ik`, with `0 ln 0 = 0`.
pub fn partition_entropy(u: &FuzzyPartition) -> f64 {
    let s: f64 = u
        .as_slice()
        .iter()
        .filter(|v| **v > 0.0)
        .map(|v| v * v.ln())
        .sum();
    // -0.0 on crisp input
    (-s / u.n_objects() as f64).max(0.0)
}

/// `MPC = 1 − c/(c−1) (1 − PC)`.
pub fn modified_partition_coefficient(u: &FuzzyPartition) -> f64 {
    let c = u.n_clusters() as f64;
    (1.0 - c / (c - 1.0) * (1.0 - partition_coefficient(u))).clamp(0.0, 1.0)
}

fn pair_weight(weights: Option<&RelevanceWeights>, i: usize, j: usize) -> (f64, f64) {
    weights.map_or((1.0, 1.0), |w| w.pair(i, j))
}

fn weighted(decs: &[Decomposition], weights: Option<&RelevanceWeights>, i: usize) -> f64 {
    decs.iter()
        .enumerate()
        .map(|(j, d)| {
            let (lm, lv) = pair_weight(weights, i, j);
            lm * d.position + lv * d.dispersion
        })
        .sum()
}

fn check_shapes(
    table: &DistributionalTable,
    u: &FuzzyPartition,
    weights: Option<&RelevanceWeights>,
) -> Result<(), ValidityError> {
    if u.n_objects() != table.n_objects() {
        return Err(ValidityError::Shape(format!(
            "{} membership rows for {} objects",
            u.n_objects(),
            table.n_objects()
        )));
    }
    if let Some(w) = weights {
        if w.n_clusters() != u.n_clusters() || w.n_variables() != table.n_variables() {
            return Err(ValidityError::Shape(
                "relevance weights do not match partition and table".into(),
            ));
        }
    }
    Ok(())
}

/// Xie–Beni index with the adaptive distance.
///
/// Compactness `Σ_i Σ_k u_ik² d(y_k, g_i | Λ)` over `N · min_{i≠h}
/// d(g_i, g_h | Λ_i)`; cluster-wise schemes measure the separation of `g_i`
/// from `g_h` with cluster `i`'s weights.
pub fn xie_beni(
    table: &DistributionalTable,
    u: &FuzzyPartition,
    g: &PrototypeSet,
    weights: Option<&RelevanceWeights>,
) -> Result<f64, ValidityError> {
    check_shapes(table, u, weights)?;
    let c = u.n_clusters();
    if c < 2 || g.n_clusters() != c {
        return Err(ValidityError::Shape(format!(
            "{} prototypes for {c} clusters (need at least 2)",
            g.n_clusters()
        )));
    }
    let d = ComponentDistances::compute(table, g)?.adaptive(weights);
    let compact: f64 = d.iter().zip(u.as_slice()).map(|(d, v)| v * v * d).sum();
    let mut sep = f64::INFINITY;
    for i in 0..c {
        for h in 0..c {
            if i == h {
                continue;
            }
            let decs = g
                .cluster(i)
                .iter()
                .zip(g.cluster(h))
                .map(|(a, b)| decompose(a, b))
                .collect::<Result<Vec<_>, _>>()?;
            sep = sep.min(weighted(&decs, weights, i));
        }
    }
    if !(sep > 0.0) {
        return Err(ValidityError::ZeroSeparation);
    }
    Ok(compact / (u.n_objects() as f64 * sep))
}

/// Fuzzy silhouette with the adaptive distance.
///
/// Objects are assigned by hardening. `a_k` is the mean distance to the
/// other members of the object's cluster, `b_k` the smallest mean distance
/// to the members of another non-empty cluster; distances to members of
/// cluster `h` use `Λ_h`. Per-object silhouettes are averaged with weights
/// `(u_1st − u_2nd)^α`. Objects alone in their cluster, and objects with
/// `a_k = b_k = 0`, score 0.
pub fn fuzzy_silhouette(
    table: &DistributionalTable,
    u: &FuzzyPartition,
    weights: Option<&RelevanceWeights>,
    alpha: f64,
) -> Result<f64, ValidityError> {
    check_shapes(table, u, weights)?;
    let (n, c, p) = (u.n_objects(), u.n_clusters(), table.n_variables());
    if c < 2 || n < 2 {
        return Err(ValidityError::Shape(
            "fuzzy silhouette needs at least 2 clusters and 2 objects".into(),
        ));
    }
    if !(alpha > 0.0) {
        return Err(ValidityError::InvalidInput(format!(
            "silhouette exponent must be positive, got {alpha}"
        )));
    }
    let labels = u.harden();
    let mut sizes = vec![0usize; c];
    for &l in &labels {
        sizes[l] += 1;
    }

    // Upper-triangular component distances between objects.
    let mut pair = vec![Decomposition::default(); n * (n - 1) / 2 * p];
    let idx = |k: usize, l: usize| (k * (2 * n - k - 1) / 2 + (l - k - 1)) * p;
    for k in 0..n {
        for l in k + 1..n {
            let base = idx(k, l);
            for j in 0..p {
                pair[base + j] = decompose(table.cell(k, j), table.cell(l, j))?;
            }
        }
    }
    let dist = |k: usize, l: usize, h: usize| {
        let (a, b) = if k < l { (k, l) } else { (l, k) };
        let base = idx(a, b);
        weighted(&pair[base..base + p], weights, h)
    };

    let mut num = 0.0;
    let mut den = 0.0;
    let mut sums = vec![0.0; c];
    for k in 0..n {
        let own = labels[k];
        let row = u.row(k);
        let (mut first, mut second) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &v in row {
            if v > first {
                second = first;
                first = v;
            } else if v > second {
                second = v;
            }
        }
        let w = (first - second).powf(alpha);

        sums.iter_mut().for_each(|s| *s = 0.0);
        for l in 0..n {
            if l != k {
                sums[labels[l]] += dist(k, l, labels[l]);
            }
        }
        let s = if sizes[own] < 2 {
            0.0
        } else {
            let a = sums[own] / (sizes[own] - 1) as f64;
            let b = (0..c)
                .filter(|&h| h != own && sizes[h] > 0)
                .map(|h| sums[h] / sizes[h] as f64)
                .fold(f64::INFINITY, f64::min);
            let top = a.max(b);
            if b.is_infinite() || top <= 0.0 {
                0.0
            } else {
                (b - a) / top
            }
        };
        num += w * s;
        den += w;
    }
    Ok(if den > 0.0 { num / den } else { 0.0 })
}
