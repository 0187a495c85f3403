use serde::Serialize;

use crate::clustering::FuzzyPartition;
use crate::distributional::{barycenter, decompose, Decomposition, DistributionalTable};

use super::ValidityError;

/// Within-cluster and total sums of squared Wasserstein distances, split
/// into position and dispersion components, per variable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionTable {
    pub variable_names: Vec<String>,
    /// `clusters[i][j]`: SSE of cluster `i` on variable `j`.
    pub clusters: Vec<Vec<Decomposition>>,
    /// `WSSE_j`, summed over clusters.
    pub within: Vec<Decomposition>,
    /// `TSSE_j`, around the unweighted barycenter of the whole column.
    pub total: Vec<Decomposition>,
}

/// `1 − within / total`, clamped to `[0, 1]`; `None` when `total` is 0.
fn ratio_index(within: f64, total: f64) -> Option<f64> {
    (total > 0.0).then(|| (1.0 - within / total).clamp(0.0, 1.0))
}

impl DispersionTable {
    /// Crisp table: cluster `i` holds the objects labelled `i` and its
    /// prototype is their unweighted barycenter.
    pub fn crisp(
        table: &DistributionalTable,
        labels: &[usize],
        clusters: usize,
    ) -> Result<Self, ValidityError> {
        if labels.len() != table.n_objects() {
            return Err(ValidityError::Shape(format!(
                "{} labels for {} objects",
                labels.len(),
                table.n_objects()
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| l >= clusters) {
            return Err(ValidityError::Shape(format!(
                "label {l} outside 0..{clusters}"
            )));
        }
        let weights: Vec<Vec<f64>> = (0..clusters)
            .map(|i| {
                labels
                    .iter()
                    .map(|&l| f64::from(u8::from(l == i)))
                    .collect()
            })
            .collect();
        if let Some(i) = weights.iter().position(|w| w.iter().all(|v| *v == 0.0)) {
            return Err(ValidityError::EmptyCluster(i));
        }
        Self::build(table, &weights)
    }

    /// Fuzzy table: cluster `i` weights every object by `u_ik^m`.
    pub fn fuzzy(
        table: &DistributionalTable,
        u: &FuzzyPartition,
        m: f64,
    ) -> Result<Self, ValidityError> {
        if u.n_objects() != table.n_objects() {
            return Err(ValidityError::Shape(format!(
                "{} membership rows for {} objects",
                u.n_objects(),
                table.n_objects()
            )));
        }
        let weights: Vec<Vec<f64>> = (0..u.n_clusters())
            .map(|i| (0..u.n_objects()).map(|k| u.get(k, i).powf(m)).collect())
            .collect();
        if let Some(i) = weights.iter().position(|w| !(w.iter().sum::<f64>() > 0.0)) {
            return Err(ValidityError::EmptyCluster(i));
        }
        Self::build(table, &weights)
    }

    fn build(table: &DistributionalTable, weights: &[Vec<f64>]) -> Result<Self, ValidityError> {
        let p = table.n_variables();
        let n = table.n_objects();
        let mut clusters = vec![vec![Decomposition::default(); p]; weights.len()];
        let mut within = vec![Decomposition::default(); p];
        let mut total = vec![Decomposition::default(); p];
        let ones = vec![1.0; n];
        for j in 0..p {
            let col = table.column(j);
            let global = barycenter(&ones, &col)?;
            for y in &col {
                total[j] += decompose(y, &global)?;
            }
            for (i, w) in weights.iter().enumerate() {
                let g = barycenter(w, &col)?;
                for (wk, y) in w.iter().zip(&col) {
                    if *wk == 0.0 {
                        continue;
                    }
                    let d = decompose(y, &g)?;
                    clusters[i][j] += Decomposition {
                        position: wk * d.position,
                        dispersion: wk * d.dispersion,
                    };
                }
                within[j] += clusters[i][j];
            }
        }
        Ok(Self {
            variable_names: table.variable_names().to_vec(),
            clusters,
            within,
            total,
        })
    }

    pub fn n_variables(&self) -> usize {
        self.within.len()
    }

    /// `QPI_j`.
    pub fn qpi_variable(&self, j: usize) -> Option<f64> {
        ratio_index(self.within[j].total(), self.total[j].total())
    }

    /// `QPI_{j,m}`.
    pub fn qpi_position(&self, j: usize) -> Option<f64> {
        ratio_index(self.within[j].position, self.total[j].position)
    }

    /// `QPI_{j,d}`.
    pub fn qpi_dispersion(&self, j: usize) -> Option<f64> {
        ratio_index(self.within[j].dispersion, self.total[j].dispersion)
    }

    /// `1 − Σ_j WSSE_j / Σ_j TSSE_j`.
    pub fn qpi(&self) -> Result<f64, ValidityError> {
        let w: f64 = self.within.iter().map(Decomposition::total).sum();
        let t: f64 = self.total.iter().map(Decomposition::total).sum();
        ratio_index(w, t).ok_or(ValidityError::ZeroTotalDispersion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributional::{Distribution, SkewLogistic};

    fn sl(g: f64, e: f64) -> Distribution {
        SkewLogistic::new(g, e, 0.0).unwrap().into()
    }

    #[test]
    fn identical_within_distinct_between() {
        let rows = vec![
            vec![sl(0.0, 1.0)],
            vec![sl(0.0, 1.0)],
            vec![sl(3.0, 2.0)],
            vec![sl(3.0, 2.0)],
        ];
        let t = DistributionalTable::from_rows(rows).unwrap();
        let d = DispersionTable::crisp(&t, &[0, 0, 1, 1], 2).unwrap();
        assert_eq!(d.qpi().unwrap(), 1.0);
        assert_eq!(d.qpi_position(0), Some(1.0));
        assert_eq!(d.qpi_dispersion(0), Some(1.0));
    }

    #[test]
    fn single_cluster_scores_zero() {
        let rows = vec![vec![sl(0.0, 1.0)], vec![sl(1.0, 1.5)], vec![sl(2.0, 1.0)]];
        let t = DistributionalTable::from_rows(rows).unwrap();
        let d = DispersionTable::crisp(&t, &[0, 0, 0], 1).unwrap();
        assert!(d.qpi().unwrap().abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        let t = DistributionalTable::from_rows(vec![vec![sl(1.0, 1.0)]; 3]).unwrap();
        let d = DispersionTable::crisp(&t, &[0, 1, 1], 2).unwrap();
        assert!(matches!(d.qpi(), Err(ValidityError::ZeroTotalDispersion)));
        assert_eq!(d.qpi_variable(0), None);
        assert!(matches!(
            DispersionTable::crisp(&t, &[0, 0, 0], 2),
            Err(ValidityError::EmptyCluster(1))
        ));
    }
}
