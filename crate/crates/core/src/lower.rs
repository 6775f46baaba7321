//! Exact lower-level decoders.
//!
//! Every decoder returns the lexicographically smallest optimal selection
//! (compared cluster by cluster in id order). The dynamic programs count
//! optimal selections on the way; when the optimum is unique the backtracked
//! selection is returned directly, otherwise clusters are pinned one at a
//! time in id order to the smallest node that keeps the optimum reachable.

use alloc::vec;
use alloc::vec::Vec;
use core::slice;

use crate::cost::Cost;
use crate::graph::ClusteredGraph;
use crate::solution::{ClusterTour, ClusterTree, DecodedSolution, NodeSelection};
use crate::UnionFind;

/// Number of optimal selections, saturated at 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Multiplicity(u8);

impl Multiplicity {
    const ZERO: Self = Multiplicity(0);
    const ONE: Self = Multiplicity(1);

    fn plus(self, other: Self) -> Self {
        Multiplicity((self.0 + other.0).min(2))
    }

    fn times(self, other: Self) -> Self {
        Multiplicity((self.0 * other.0).min(2))
    }

    fn is_unique(self) -> bool {
        self.0 == 1
    }
}

/// Cost of a selection realized along a cluster tree.
pub fn tree_cost(g: &ClusteredGraph, t: &ClusterTree, p: &NodeSelection) -> Cost {
    t.edges().iter().map(|&(i, j)| g.cost(p.node(i), p.node(j))).sum()
}

/// Cost of a closed tour visiting the selected nodes in tour order.
pub fn tour_cost(g: &ClusteredGraph, tour: &ClusterTour, p: &NodeSelection) -> Cost {
    tour_arcs(tour, p).into_iter().map(|(u, v)| g.cost(u, v)).sum()
}

fn tour_arcs(tour: &ClusterTour, p: &NodeSelection) -> Vec<(usize, usize)> {
    let order = tour.order();
    let m = order.len();
    (0..m).map(|i| (p.node(order[i]), p.node(order[(i + 1) % m]))).collect()
}

/// Minimum spanning tree (Kruskal) over the subgraph induced by the selected
/// nodes, using finite edges only. Infinite when that subgraph is disconnected.
pub fn mst_on_selection(g: &ClusteredGraph, p: &NodeSelection) -> DecodedSolution {
    let nodes = p.chosen();
    let m = nodes.len();
    let mut candidates = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let c = g.cost(nodes[i], nodes[j]);
            if c.is_finite() {
                candidates.push((c, i, j));
            }
        }
    }
    candidates.sort_unstable();
    let mut uf = UnionFind::new(m);
    let mut edges = Vec::with_capacity(m - 1);
    let mut cost = Cost::ZERO;
    for (c, i, j) in candidates {
        if uf.union(i, j) {
            edges.push((nodes[i], nodes[j]));
            cost = cost + c;
            if edges.len() + 1 == m {
                break;
            }
        }
    }
    if edges.len() + 1 != m {
        return DecodedSolution {
            selection: p.clone(),
            cost: Cost::INFINITE,
            structure_edges: Vec::new(),
        };
    }
    DecodedSolution { selection: p.clone(), cost, structure_edges: edges }
}

/// Pins clusters in id order to the smallest node for which `eval` still
/// reaches `optimum`.
fn canonical_selection(
    g: &ClusteredGraph,
    optimum: Cost,
    mut eval: impl FnMut(&[&[usize]]) -> Cost,
) -> NodeSelection {
    let m = g.m();
    let mut pinned: Vec<usize> = Vec::with_capacity(m);
    for c in 0..m {
        let mut found = None;
        for &v in g.members(c) {
            pinned.push(v);
            let allowed: Vec<&[usize]> = (0..m)
                .map(|k| if k <= c { slice::from_ref(&pinned[k]) } else { g.members(k) })
                .collect();
            if eval(&allowed) == optimum {
                found = Some(v);
                break;
            }
            pinned.pop();
        }
        assert!(found.is_some(), "optimum unreachable after pinning cluster {c}");
    }
    NodeSelection::from_vec(pinned)
}

struct TreeDp {
    cost: Cost,
    multiplicity: Multiplicity,
    selection: Option<Vec<usize>>,
}

/// Rooted-tree DP: `best[c][k]` is the cheapest subtree realization when
/// cluster `c` uses its `k`-th allowed node.
fn tree_dp(g: &ClusteredGraph, adj: &[Vec<usize>], allowed: &[&[usize]], backtrack: bool) -> TreeDp {
    let m = adj.len();
    let mut order = Vec::with_capacity(m);
    let mut parent = vec![usize::MAX; m];
    order.push(0);
    parent[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for &d in &adj[c] {
            if parent[d] == usize::MAX {
                parent[d] = c;
                order.push(d);
            }
        }
    }
    debug_assert_eq!(order.len(), m, "tree must span all clusters");

    let mut best: Vec<Vec<Cost>> = vec![Vec::new(); m];
    let mut mult: Vec<Vec<Multiplicity>> = vec![Vec::new(); m];
    // choice[c][k]: for each child of c (in adjacency order), index of its chosen node
    let mut choice: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m];
    for &c in order.iter().rev() {
        let children: Vec<usize> = adj[c].iter().copied().filter(|&d| parent[d] == c && d != c).collect();
        for &v in allowed[c] {
            let mut total = Cost::ZERO;
            let mut count = Multiplicity::ONE;
            let mut picks = Vec::new();
            for &d in &children {
                let mut min = Cost::INFINITE;
                let mut arg = 0;
                let mut tied = Multiplicity::ZERO;
                for (k, &u) in allowed[d].iter().enumerate() {
                    let cand = best[d][k] + g.cost(v, u);
                    if cand < min {
                        min = cand;
                        arg = k;
                        tied = mult[d][k];
                    } else if cand == min && cand.is_finite() {
                        tied = tied.plus(mult[d][k]);
                    }
                }
                total = total + min;
                count = count.times(tied);
                if backtrack {
                    picks.push(arg);
                }
            }
            best[c].push(total);
            mult[c].push(count);
            choice[c].push(picks);
        }
    }

    let mut cost = Cost::INFINITE;
    let mut root_k = 0;
    let mut multiplicity = Multiplicity::ZERO;
    for (k, &b) in best[0].iter().enumerate() {
        if b < cost {
            cost = b;
            root_k = k;
            multiplicity = mult[0][k];
        } else if b == cost && b.is_finite() {
            multiplicity = multiplicity.plus(mult[0][k]);
        }
    }
    let selection = (backtrack && cost.is_finite()).then(|| {
        let mut idx = vec![0usize; m];
        idx[0] = root_k;
        for &c in &order {
            let children = adj[c].iter().filter(|&&d| parent[d] == c && d != c);
            for (slot, &d) in children.enumerate() {
                idx[d] = choice[c][idx[c]][slot];
            }
        }
        (0..m).map(|c| allowed[c][idx[c]]).collect()
    });
    TreeDp { cost, multiplicity, selection }
}

/// Optimal node per cluster for a fixed cluster tree, by dynamic programming
/// over the tree rooted at cluster 0. Costs are read as `cost(parent, child)`,
/// which requires a symmetric instance.
pub fn best_nodes_for_tree(g: &ClusteredGraph, t: &ClusterTree) -> DecodedSolution {
    debug_assert_eq!(t.m(), g.m());
    let adj = t.adjacency();
    let members: Vec<&[usize]> = (0..g.m()).map(|c| g.members(c)).collect();
    let dp = tree_dp(g, &adj, &members, true);
    if dp.cost.is_infinite() {
        return DecodedSolution::infeasible(g);
    }
    let selection = if dp.multiplicity.is_unique() {
        NodeSelection::from_vec(dp.selection.expect("backtracked"))
    } else {
        canonical_selection(g, dp.cost, |allowed| tree_dp(g, &adj, allowed, false).cost)
    };
    let structure_edges =
        t.edges().iter().map(|&(i, j)| (selection.node(i), selection.node(j))).collect();
    DecodedSolution { selection, cost: dp.cost, structure_edges }
}

struct TourDp {
    cost: Cost,
    multiplicity: Multiplicity,
    /// Chosen node per position of the rotated sequence.
    path: Option<Vec<usize>>,
}

/// Layered shortest closed walk through `seq`, trying every allowed node of
/// `seq[0]` as the start.
fn tour_dp(g: &ClusteredGraph, seq: &[usize], allowed: &[&[usize]], backtrack: bool) -> TourDp {
    let len = seq.len();
    let mut best = TourDp { cost: Cost::INFINITE, multiplicity: Multiplicity::ZERO, path: None };
    let mut dist: Vec<Cost> = Vec::new();
    let mut next: Vec<Cost> = Vec::new();
    let mut mult: Vec<Multiplicity> = Vec::new();
    let mut next_mult: Vec<Multiplicity> = Vec::new();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); len];

    for &s in allowed[seq[0]] {
        dist.clear();
        dist.push(Cost::ZERO);
        mult.clear();
        mult.push(Multiplicity::ONE);
        let mut prev_nodes: &[usize] = slice::from_ref(&s);
        for layer in 1..len {
            let nodes = allowed[seq[layer]];
            next.clear();
            next_mult.clear();
            pred[layer].clear();
            for &u in nodes {
                let mut min = Cost::INFINITE;
                let mut arg = 0;
                let mut tied = Multiplicity::ZERO;
                for (k, &w) in prev_nodes.iter().enumerate() {
                    let cand = dist[k] + g.cost(w, u);
                    if cand < min {
                        min = cand;
                        arg = k;
                        tied = mult[k];
                    } else if cand == min && cand.is_finite() {
                        tied = tied.plus(mult[k]);
                    }
                }
                next.push(min);
                next_mult.push(tied);
                pred[layer].push(arg);
            }
            core::mem::swap(&mut dist, &mut next);
            core::mem::swap(&mut mult, &mut next_mult);
            prev_nodes = nodes;
        }
        let mut total = Cost::INFINITE;
        let mut arg = 0;
        let mut tied = Multiplicity::ZERO;
        for (k, &w) in prev_nodes.iter().enumerate() {
            let cand = dist[k] + g.cost(w, s);
            if cand < total {
                total = cand;
                arg = k;
                tied = mult[k];
            } else if cand == total && cand.is_finite() {
                tied = tied.plus(mult[k]);
            }
        }
        if total < best.cost {
            best.cost = total;
            best.multiplicity = tied;
            if backtrack {
                let mut path = vec![0usize; len];
                path[0] = s;
                let mut k = arg;
                for layer in (1..len).rev() {
                    path[layer] = allowed[seq[layer]][k];
                    k = pred[layer][k];
                }
                best.path = Some(path);
            }
        } else if total == best.cost && total.is_finite() {
            best.multiplicity = best.multiplicity.plus(tied);
        }
    }
    best
}

/// Rotation of `order` starting at the cluster with the fewest allowed nodes
/// (lowest cluster id among ties).
fn rotate_to_smallest(order: &[usize], allowed: &[&[usize]]) -> Vec<usize> {
    let start = (0..order.len())
        .min_by_key(|&i| (allowed[order[i]].len(), order[i]))
        .unwrap_or(0);
    order[start..].iter().chain(&order[..start]).copied().collect()
}

/// Optimal node per cluster for a fixed cluster tour ("cluster optimisation"):
/// a layered shortest path from every node of the smallest cluster back to
/// itself. Arc costs are read in tour direction.
pub fn best_nodes_for_tour(g: &ClusteredGraph, tour: &ClusterTour) -> DecodedSolution {
    debug_assert_eq!(tour.len(), g.m());
    let members: Vec<&[usize]> = (0..g.m()).map(|c| g.members(c)).collect();
    let seq = rotate_to_smallest(tour.order(), &members);
    let dp = tour_dp(g, &seq, &members, true);
    if dp.cost.is_infinite() {
        return DecodedSolution::infeasible(g);
    }
    let selection = if dp.multiplicity.is_unique() {
        let path = dp.path.expect("backtracked");
        let mut chosen = vec![0usize; g.m()];
        for (pos, &c) in seq.iter().enumerate() {
            chosen[c] = path[pos];
        }
        NodeSelection::from_vec(chosen)
    } else {
        canonical_selection(g, dp.cost, |allowed| {
            let seq = rotate_to_smallest(tour.order(), allowed);
            tour_dp(g, &seq, allowed, false).cost
        })
    };
    let structure_edges = tour_arcs(tour, &selection);
    DecodedSolution { selection, cost: dp.cost, structure_edges }
}
