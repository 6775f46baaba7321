//! The three (1+1) EAs. Each run initializes uniformly, then repeats
//! mutate -> decode -> accept-if-not-worse until the known optimum is decoded
//! or the evaluation budget is spent. Every decode, the initial one included,
//! counts as one evaluation.

use alloc::vec::Vec;

use rand::Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::ClusteredGraph;
use crate::lower::{best_nodes_for_tour, best_nodes_for_tree, mst_on_selection};
use crate::measures::{similarity, tree_distance};
use crate::mutation::{mutate_selection, mutate_tour, mutate_tree};
use crate::sampling::{uniform_selection, uniform_spanning_tree, uniform_tour};
use crate::solution::{ClusterTour, ClusterTree, DecodedSolution, NodeSelection};

/// Evaluations without strict improvement after which a run is flagged as
/// stuck on a plateau: `50 m^2`.
pub fn stagnation_window(m: usize) -> u64 {
    50 * (m as u64) * (m as u64)
}

/// A strict improvement of the accepted cost (the first entry is the initial
/// solution).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChangePoint {
    pub evaluation: u64,
    pub cost: Cost,
    /// Similarity for tour runs, distance to the reference tree for tracked
    /// tree runs.
    pub diagnostic: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome<G> {
    /// Final accepted genotype and its decoding.
    pub genotype: G,
    pub decoded: DecodedSolution,
    pub evaluations: u64,
    pub evaluations_to_optimum: Option<u64>,
    pub best_cost: Cost,
    pub trajectory: Vec<ChangePoint>,
    pub hit_local_plateau: bool,
}

struct Loop {
    target: Option<Cost>,
    budget: u64,
    window: u64,
}

impl Loop {
    fn new(g: &ClusteredGraph, budget: u64) -> Result<Self> {
        if budget == 0 {
            return Err(Error::ZeroBudget);
        }
        Ok(Loop {
            target: g.known_optimum(),
            budget,
            window: stagnation_window(g.m()),
        })
    }

    fn run<G, R: Rng + ?Sized>(
        &self,
        init: G,
        rng: &mut R,
        decode: impl Fn(&G) -> DecodedSolution,
        mut mutate: impl FnMut(&G, &mut R) -> G,
        diagnostic: impl Fn(&G) -> Option<u64>,
    ) -> RunOutcome<G> {
        let mut parent = init;
        let mut parent_dec = decode(&parent);
        let mut evaluations = 1;
        let mut last_improvement = 1;
        let mut hit_local_plateau = false;
        let mut trajectory = Vec::new();
        trajectory.push(ChangePoint { evaluation: 1, cost: parent_dec.cost, diagnostic: diagnostic(&parent) });
        let mut found = (Some(parent_dec.cost) == self.target).then_some(1);

        while found.is_none() && evaluations < self.budget {
            let child = mutate(&parent, rng);
            let child_dec = decode(&child);
            evaluations += 1;
            if child_dec.cost <= parent_dec.cost {
                if child_dec.cost < parent_dec.cost {
                    last_improvement = evaluations;
                    trajectory.push(ChangePoint {
                        evaluation: evaluations,
                        cost: child_dec.cost,
                        diagnostic: diagnostic(&child),
                    });
                }
                parent = child;
                parent_dec = child_dec;
                if Some(parent_dec.cost) == self.target {
                    found = Some(evaluations);
                }
            }
            if evaluations - last_improvement >= self.window {
                hit_local_plateau = true;
            }
        }
        RunOutcome {
            best_cost: parent_dec.cost,
            genotype: parent,
            decoded: parent_dec,
            evaluations,
            evaluations_to_optimum: found,
            trajectory,
            hit_local_plateau,
        }
    }
}

/// Spanned-nodes representation: genotype is the node per cluster, decoded by
/// a minimum spanning tree on the selected nodes.
pub fn run_cluster_ea<R: Rng + ?Sized>(g: &ClusteredGraph, budget: u64, rng: &mut R) -> Result<RunOutcome<NodeSelection>> {
    if !g.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    let driver = Loop::new(g, budget)?;
    let init = uniform_selection(g, rng);
    Ok(driver.run(init, rng, |p| mst_on_selection(g, p), |p, r| mutate_selection(p, g, r), |_| None))
}

/// Global structure representation for GMSTP: genotype is a spanning tree of
/// the cluster graph, decoded by the tree DP.
pub fn run_tree_ea<R: Rng + ?Sized>(g: &ClusteredGraph, budget: u64, rng: &mut R) -> Result<RunOutcome<ClusterTree>> {
    run_tree_ea_tracking(g, budget, None, rng)
}

/// [`run_tree_ea`] logging the distance to `reference` at every change point.
pub fn run_tree_ea_tracking<R: Rng + ?Sized>(
    g: &ClusteredGraph,
    budget: u64,
    reference: Option<&ClusterTree>,
    rng: &mut R,
) -> Result<RunOutcome<ClusterTree>> {
    if !g.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    let driver = Loop::new(g, budget)?;
    let h = g.cluster_graph();
    let init = uniform_spanning_tree(&h, rng)?;
    Ok(driver.run(
        init,
        rng,
        |t| best_nodes_for_tree(g, t),
        |t, r| mutate_tree(t, &h, r),
        |t| reference.map(|r| tree_distance(t, r) as u64),
    ))
}

/// Global structure representation for GTSP: genotype is a cluster tour,
/// decoded by cluster optimisation. Change points carry the tour similarity.
pub fn run_tour_ea<R: Rng + ?Sized>(g: &ClusteredGraph, budget: u64, rng: &mut R) -> Result<RunOutcome<ClusterTour>> {
    let driver = Loop::new(g, budget)?;
    if !g.cluster_graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let init = uniform_tour(g.m(), rng);
    Ok(driver.run(
        init,
        rng,
        |t| best_nodes_for_tour(g, t),
        |t, r| mutate_tour(t, r),
        |t| Some(similarity(t) as u64),
    ))
}
