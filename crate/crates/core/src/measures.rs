//! Diagnostics tracked along runs.

use crate::solution::{ClusterTour, ClusterTree};

/// Number of cyclic positions `i` whose successor is cluster `(tour[i] + 1) mod m`.
pub fn similarity(tour: &ClusterTour) -> usize {
    let order = tour.order();
    let m = order.len();
    (0..m).filter(|&i| order[(i + 1) % m] == (order[i] + 1) % m).count()
}

/// Number of edges of `reference` missing from `t`.
pub fn tree_distance(t: &ClusterTree, reference: &ClusterTree) -> usize {
    reference.edges().iter().filter(|&&(a, b)| !t.contains(a, b)).count()
}
