//! Fuzzy c-means clustering of distribution-valued data under the L2
//! Wasserstein distance, with adaptive relevance weights, validity indexes
//! and a synthetic skew-logistic data generator.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clustering;
pub mod distributional;
pub mod synthgen;
pub mod validity;
