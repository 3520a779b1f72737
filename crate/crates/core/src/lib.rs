//! Exact solvers for the harmless set problem: find a largest vertex set `S`
//! such that every vertex `v` has fewer than `t(v)` neighbours in `S`.

pub mod cwd;
pub mod error;
pub mod format;
pub mod graph;
pub mod ilp;
pub mod instance;
pub mod nd;
pub mod oracle;
pub mod planar;
pub mod reductions;
pub mod solve;
pub mod twincover;

pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{majority_thresholds, Instance, VertexSet, Violation};
pub use solve::{SolveResult, SolverTag};
