//! Random initializers and the Poisson step-count sampler.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{ClusterGraph, ClusteredGraph};
use crate::solution::{ClusterTour, ClusterTree, NodeSelection};

/// e^-1
const INV_E: f64 = 0.367_879_441_171_442_33;

/// Exact Poisson(1) draw: multiply uniforms until the product drops below
/// e^-1; the number of factors minus one is the sample.
pub fn sample_poisson1<R: Rng + ?Sized>(rng: &mut R) -> u32 {
    let mut k = 0;
    let mut product: f64 = rng.gen();
    while product >= INV_E {
        k += 1;
        product *= rng.gen::<f64>();
    }
    k
}

/// Uniform spanning tree of `h` by Wilson's loop-erased random walks.
pub fn uniform_spanning_tree<R: Rng + ?Sized>(h: &ClusterGraph, rng: &mut R) -> Result<ClusterTree> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = h.m();
    let mut in_tree = vec![false; m];
    let mut next = vec![usize::MAX; m];
    in_tree[0] = true;
    for start in 1..m {
        let mut u = start;
        while !in_tree[u] {
            let nbrs = h.neighbors(u);
            next[u] = nbrs[rng.gen_range(0..nbrs.len())];
            u = next[u];
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    let mut edges: Vec<(usize, usize)> =
        (1..m).map(|u| if u < next[u] { (u, next[u]) } else { (next[u], u) }).collect();
    edges.sort_unstable();
    Ok(ClusterTree::from_sorted_unchecked(m, edges))
}

/// Uniform node in every cluster.
pub fn uniform_selection<R: Rng + ?Sized>(g: &ClusteredGraph, rng: &mut R) -> NodeSelection {
    let chosen = (0..g.m()).map(|c| *g.members(c).choose(rng).expect("nonempty cluster")).collect();
    NodeSelection::from_vec(chosen)
}

/// Uniform permutation of the clusters.
pub fn uniform_tour<R: Rng + ?Sized>(m: usize, rng: &mut R) -> ClusterTour {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    ClusterTour::from_vec_unchecked(order)
}
