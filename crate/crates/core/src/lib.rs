//! Bi-level evolutionary optimization for the generalized minimum spanning
//! tree problem (GMSTP) and the generalized traveling salesman problem (GTSP).
//!
//! An instance is a [`ClusteredGraph`]: nodes partitioned into `m` clusters,
//! with integer edge costs. The upper level of each algorithm searches over a
//! genotype (a [`NodeSelection`], a [`ClusterTree`] or a [`ClusterTour`]), and
//! an exact polynomial decoder solves the lower level:
//!
//! | genotype          | decoder                           |
//! | :---------------- | :-------------------------------- |
//! | `NodeSelection`   | [`mst_on_selection`] (Kruskal)    |
//! | `ClusterTree`     | [`best_nodes_for_tree`] (tree DP) |
//! | `ClusterTour`     | [`best_nodes_for_tour`] (layered shortest path) |
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

mod cost;
mod dsu;
pub mod ea;
mod error;
pub mod generators;
mod graph;
pub mod lower;
pub mod measures;
pub mod mutation;
pub mod oracle;
pub mod sampling;
mod solution;

pub use cost::Cost;
pub use dsu::UnionFind;
pub use ea::{run_cluster_ea, run_tour_ea, run_tree_ea, ChangePoint, RunOutcome};
pub use error::{Error, Result};
pub use generators::{generate_gg_mst, generate_gg_tsp, generate_gs, generate_random};
pub use graph::{ClusterGraph, ClusteredGraph};
pub use lower::{best_nodes_for_tour, best_nodes_for_tree, mst_on_selection};
pub use measures::{similarity, tree_distance};
pub use solution::{ClusterTour, ClusterTree, DecodedSolution, NodeSelection};

/// Deterministic generator used for every random decision in the crate.
pub type RandomStream = rand_chacha::ChaCha8Rng;

/// Creates the stream for a seed. Trial `i` of a campaign uses `base_seed + i`.
pub fn stream_from_seed(seed: u64) -> RandomStream {
    use rand::SeedableRng;
    RandomStream::seed_from_u64(seed)
}
