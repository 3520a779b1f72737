//! Instance generators from orientation and subset-sum problems.

mod mmo;
mod mrss;

pub use mmo::{reduce_mmo, EdgeGadget, MmoReductionOutput};
pub use mrss::{reduce_mrss, reduce_mrss_with, MrssReductionOutput, PairEdges, VectorGadget};
