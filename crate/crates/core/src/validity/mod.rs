//! Internal and external cluster-validity indexes.
//!
//! Internal indexes measure a fuzzy partition on its own: the partition
//! coefficient and entropy (memberships only), Xie–Beni and the fuzzy
//! silhouette (with the clustering's adaptive distance), and the quality of
//! partition `QPI = 1 − WSSE/TSSE`. External indexes compare a partition
//! with reference labels through pairwise co-membership.

mod dispersion;
mod external;
mod internal;

use serde::Serialize;
use thiserror::Error;

use crate::clustering::{ClusteringError, ClusteringResult};
use crate::distributional::{DistributionError, DistributionalTable};

pub use dispersion::DispersionTable;
pub use external::{fuzzy_external, pair_indexes, ExternalReport, PairCounts, PairIndexes};
pub use internal::{
    fuzzy_silhouette, modified_partition_coefficient, partition_coefficient, partition_entropy,
    xie_beni, SILHOUETTE_ALPHA,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValidityError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("reference labels contain a single class; pair indexes are undefined")]
    SingleReferenceClass,
    #[error("two prototypes coincide; Xie-Beni separation is zero")]
    ZeroSeparation,
    #[error("total dispersion is zero; QPI is undefined")]
    ZeroTotalDispersion,
    #[error("cluster {0} is empty")]
    EmptyCluster(usize),
    #[error(transparent)]
    Clustering(#[from] ClusteringError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

/// Internal indexes of one fitted partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexReport {
    pub pc: f64,
    pub pe: f64,
    pub mpc: f64,
    pub xb: f64,
    pub fuzzy_silhouette: f64,
    /// Fuzzy QPI (memberships raised to the fuzzifier).
    pub qpi: f64,
    pub dispersion: DispersionTable,
}

impl IndexReport {
    pub fn compute(
        table: &DistributionalTable,
        result: &ClusteringResult,
    ) -> Result<Self, ValidityError> {
        let u = &result.partition;
        let w = result.weights.as_ref();
        let dispersion = DispersionTable::fuzzy(table, u, result.fuzzifier)?;
        Ok(Self {
            pc: partition_coefficient(u),
            pe: partition_entropy(u),
            mpc: modified_partition_coefficient(u),
            xb: xie_beni(table, u, &result.prototypes, w)?,
            fuzzy_silhouette: fuzzy_silhouette(table, u, w, SILHOUETTE_ALPHA)?,
            qpi: dispersion.qpi()?,
            dispersion,
        })
    }
}
