use serde::Serialize;

use crate::clustering::FuzzyPartition;

use super::ValidityError;

/// Pair-agreement totals over all `M = N(N−1)/2` object pairs.
///
/// With `a_kl = Σ_i u_ik u_il` the co-membership under `U` and `b_kl` the
/// reference co-membership indicator: `a = Σ a·b`, `b = Σ a·(1−b)`,
/// `c = Σ (1−a)·b`, `d = Σ (1−a)(1−b)`. On crisp `U` these are the classical
/// pair counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairCounts {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl PairCounts {
    /// `O(N c)` evaluation through the fuzzy contingency table
    /// `N_ir = Σ_{k ∈ class r} u_ik`.
    pub fn compute(u: &FuzzyPartition, reference: &[usize]) -> Result<Self, ValidityError> {
        let n = u.n_objects();
        if reference.len() != n {
            return Err(ValidityError::Shape(format!(
                "{} reference labels for {n} objects",
                reference.len()
            )));
        }
        let classes = reference.iter().max().map_or(0, |m| m + 1);
        let c = u.n_clusters();
        let mut contingency = vec![0.0; c * classes];
        let mut cluster_mass = vec![0.0; c];
        let mut class_size = vec![0.0; classes];
        let mut self_sq = 0.0;
        for (k, &r) in reference.iter().enumerate() {
            class_size[r] += 1.0;
            for (i, &v) in u.row(k).iter().enumerate() {
                contingency[i * classes + r] += v;
                cluster_mass[i] += v;
                self_sq += v * v;
            }
        }
        let m = (n * n.saturating_sub(1)) as f64 / 2.0;
        let sum_ab = 0.5 * (contingency.iter().map(|x| x * x).sum::<f64>() - self_sq);
        let sum_a = 0.5 * (cluster_mass.iter().map(|x| x * x).sum::<f64>() - self_sq);
        let sum_b = class_size.iter().map(|s| s * (s - 1.0) / 2.0).sum::<f64>();
        let a = sum_ab;
        let b = sum_a - sum_ab;
        let c = sum_b - sum_ab;
        Ok(Self {
            a,
            b,
            c,
            d: m - a - b - c,
        })
    }

    pub fn pairs(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }
}

/// Pair-counting agreement indexes. An index whose denominator vanishes on
/// the partition side is reported as NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairIndexes {
    pub rand: f64,
    pub ari: f64,
    pub jaccard: f64,
    pub fm: f64,
    pub hubert: f64,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::NAN
    }
}

impl From<PairCounts> for PairIndexes {
    fn from(p: PairCounts) -> Self {
        let m = p.pairs();
        let m1 = p.a + p.b;
        let m2 = p.a + p.c;
        let expected = m1 * m2 / m;
        Self {
            rand: ratio(p.a + p.d, m),
            ari: ratio(p.a - expected, 0.5 * (m1 + m2) - expected),
            jaccard: ratio(p.a, p.a + p.b + p.c),
            fm: ratio(p.a, (m1 * m2).sqrt()),
            hubert: ratio(m * p.a - m1 * m2, (m1 * m2 * (m - m1) * (m - m2)).sqrt()),
        }
    }
}

/// Fuzzy indexes on `U` and classical indexes on its hardening.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExternalReport {
    pub fuzzy: PairIndexes,
    pub crisp: PairIndexes,
}

pub fn pair_indexes(u: &FuzzyPartition, reference: &[usize]) -> Result<PairIndexes, ValidityError> {
    let mut distinct = reference.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(ValidityError::SingleReferenceClass);
    }
    Ok(PairCounts::compute(u, reference)?.into())
}

pub fn fuzzy_external(
    u: &FuzzyPartition,
    reference: &[usize],
) -> Result<ExternalReport, ValidityError> {
    let fuzzy = pair_indexes(u, reference)?;
    let crisp = FuzzyPartition::crisp(&u.harden(), u.n_clusters())?;
    Ok(ExternalReport {
        fuzzy,
        crisp: pair_indexes(&crisp, reference)?,
    })
}
