//! Principal component analysis of network samples through subgraph
//! densities.
//!
//! Each graph in a sample is summarized by the densities of a small set of
//! configurations (isolates, stars, triangles, short cycles). The resulting
//! `p x N` density matrix is row-standardized and decomposed; the leading
//! eigenvectors give interpretable loadings and each graph gets a score on
//! every component. [`pipeline::spcan`] computes the same embedding from
//! densities averaged over random vertex partitions, which is much cheaper on
//! large graphs. [`krg`] simulates kernel-based random graphs and [`verify`]
//! runs Monte Carlo checks of the estimators' statistical behavior.

pub mod census;
pub mod error;
pub mod graph;
pub mod krg;
pub mod pca;
pub mod pipeline;
pub mod rng;
pub mod verify;

pub use census::{default_configuration_set, CountMode, SubgraphConfig};
pub use error::{Error, Result};
pub use graph::{Graph, NetworkSample, PartitionPlan};
pub use krg::{Kernel, KernelMoment};
pub use pca::{DensityMatrix, Matrix, PcaResult};
pub use pipeline::{pcan, spcan, PcanSettings};
pub use verify::CheckReport;
