//! Exhaustive oracles for cross-checking the decoders and certifying optima.
//!
//! All enumerations visit selections in lexicographic order and keep the
//! first strict minimum, so ties resolve exactly like the fast decoders.

use alloc::vec;
use alloc::vec::Vec;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{ClusterGraph, ClusteredGraph};
use crate::lower::{mst_on_selection, tour_cost, tree_cost};
use crate::solution::{ClusterTour, ClusterTree, DecodedSolution, NodeSelection};
use crate::UnionFind;

/// Limit on selections enumerated per decode check.
pub const SELECTION_GUARD: u128 = 1_000_000;
/// Limit on `tours x selections` for [`brute_force_gtsp`].
pub const GTSP_GUARD: u128 = 10_000_000;

fn guard(work: u128, limit: u128) -> Result<()> {
    if work > limit {
        return Err(Error::GuardExceeded { work, limit });
    }
    Ok(())
}

/// Calls `visit` on every selection in lexicographic order.
fn for_each_selection(g: &ClusteredGraph, mut visit: impl FnMut(&NodeSelection)) {
    let m = g.m();
    let mut idx = vec![0usize; m];
    let mut sel = NodeSelection::first_nodes(g);
    loop {
        visit(&sel);
        let mut c = m;
        loop {
            if c == 0 {
                return;
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < g.members(c).len() {
                sel.set(c, g.members(c)[idx[c]]);
                break;
            }
            idx[c] = 0;
            sel.set(c, g.members(c)[0]);
        }
    }
}

fn lex_min(g: &ClusteredGraph, mut cost_of: impl FnMut(&NodeSelection) -> Cost) -> (NodeSelection, Cost) {
    let mut best = (NodeSelection::first_nodes(g), Cost::INFINITE);
    for_each_selection(g, |sel| {
        let c = cost_of(sel);
        if c < best.1 {
            best = (sel.clone(), c);
        }
    });
    best
}

/// Exhaustive counterpart of [`crate::best_nodes_for_tree`].
pub fn brute_nodes_for_tree(g: &ClusteredGraph, t: &ClusterTree) -> Result<DecodedSolution> {
    guard(g.selection_count(), SELECTION_GUARD)?;
    let (selection, cost) = lex_min(g, |sel| tree_cost(g, t, sel));
    if cost.is_infinite() {
        return Ok(DecodedSolution::infeasible(g));
    }
    let structure_edges =
        t.edges().iter().map(|&(i, j)| (selection.node(i), selection.node(j))).collect();
    Ok(DecodedSolution { selection, cost, structure_edges })
}

/// Exhaustive counterpart of [`crate::best_nodes_for_tour`].
pub fn brute_nodes_for_tour(g: &ClusteredGraph, tour: &ClusterTour) -> Result<DecodedSolution> {
    guard(g.selection_count(), SELECTION_GUARD)?;
    let (selection, cost) = lex_min(g, |sel| tour_cost(g, tour, sel));
    if cost.is_infinite() {
        return Ok(DecodedSolution::infeasible(g));
    }
    let order = tour.order();
    let m = order.len();
    let structure_edges =
        (0..m).map(|i| (selection.node(order[i]), selection.node(order[(i + 1) % m]))).collect();
    Ok(DecodedSolution { selection, cost, structure_edges })
}

/// Global GMSTP optimum: every selection, each scored by Kruskal.
pub fn brute_force_gmstp(g: &ClusteredGraph) -> Result<DecodedSolution> {
    if !g.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    guard(g.selection_count(), SELECTION_GUARD)?;
    let mut best: Option<DecodedSolution> = None;
    for_each_selection(g, |sel| {
        let d = mst_on_selection(g, sel);
        if best.as_ref().is_none_or(|b| d.cost < b.cost) {
            best = Some(d);
        }
    });
    let best = best.expect("at least one selection");
    if best.cost.is_infinite() {
        return Ok(DecodedSolution::infeasible(g));
    }
    Ok(best)
}

/// A certified GTSP optimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtspOptimum {
    pub tour: ClusterTour,
    pub solution: DecodedSolution,
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Rearranges `xs` into the next permutation in lexicographic order.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).expect("pivot exists");
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Tours with cluster 0 first. For symmetric instances one of each
/// reversal pair is kept.
pub fn distinct_tours(m: usize, symmetric: bool) -> Vec<ClusterTour> {
    let mut rest: Vec<usize> = (1..m).collect();
    let mut out = Vec::new();
    loop {
        let keep = !symmetric || rest.len() < 2 || rest[0] < rest[rest.len() - 1];
        if keep {
            let mut order = vec![0];
            order.extend_from_slice(&rest);
            out.push(ClusterTour::from_vec_unchecked(order));
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

/// Global GTSP optimum: every distinct tour, each with every selection.
pub fn brute_force_gtsp(g: &ClusteredGraph) -> Result<GtspOptimum> {
    let m = g.m();
    let tours = if g.is_symmetric() && m >= 3 { factorial(m - 1) / 2 } else { factorial(m - 1) };
    guard(tours.saturating_mul(g.selection_count()), GTSP_GUARD)?;
    let mut best: Option<GtspOptimum> = None;
    for tour in distinct_tours(m, g.is_symmetric()) {
        let solution = brute_nodes_for_tour(g, &tour)?;
        if best.as_ref().is_none_or(|b| solution.cost < b.solution.cost) {
            best = Some(GtspOptimum { tour, solution });
        }
    }
    Ok(best.expect("at least one tour"))
}

/// Every spanning tree of `h`, by filtering all `(m - 1)`-edge subsets.
/// Intended for small graphs only.
pub fn enumerate_spanning_trees(h: &ClusterGraph) -> Vec<ClusterTree> {
    let m = h.m();
    let edges = h.edges();
    let k = m - 1;
    let mut out = Vec::new();
    if edges.len() < k {
        return out;
    }
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let mut uf = UnionFind::new(m);
        if pick.iter().all(|&e| uf.union(edges[e].0, edges[e].1)) {
            out.push(ClusterTree::from_sorted_unchecked(m, pick.iter().map(|&e| edges[e]).collect()));
        }
        // next k-combination of edge indices
        let Some(i) = (0..k).rev().find(|&i| pick[i] != i + edges.len() - k) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
    out
}
