//! Upper-level mutation operators.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::graph::{ClusterGraph, ClusteredGraph};
use crate::sampling::sample_poisson1;
use crate::solution::{ClusterTour, ClusterTree, NodeSelection};

/// Each cluster independently, with probability 1/m, redraws its node
/// uniformly from the whole cluster (the current node included).
pub fn mutate_selection<R: Rng + ?Sized>(p: &NodeSelection, g: &ClusteredGraph, rng: &mut R) -> NodeSelection {
    let m = g.m();
    let mut child = p.clone();
    for c in 0..m {
        if rng.gen_range(0..m) == 0 {
            let members = g.members(c);
            child.set(c, members[rng.gen_range(0..members.len())]);
        }
    }
    child
}

/// Cluster edges on the tree path from `a` to `b`.
fn tree_path(t: &ClusterTree, a: usize, b: usize) -> Vec<(usize, usize)> {
    let adj = t.adjacency();
    let mut parent = vec![usize::MAX; t.m()];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &v in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut u = b;
    while u != a {
        path.push((parent[u], u));
        u = parent[u];
    }
    path
}

/// One edge swap: insert a uniform non-tree edge of `h`, then delete a
/// uniform edge of the cycle it closes (possibly the inserted edge itself).
/// A no-op when the tree already uses every edge of `h`.
pub fn edge_swap<R: Rng + ?Sized>(t: &mut ClusterTree, h: &ClusterGraph, rng: &mut R) {
    let outside = h.edges().len() - t.edges().len();
    if outside == 0 {
        return;
    }
    let pick = rng.gen_range(0..outside);
    let inserted = *h
        .edges()
        .iter()
        .filter(|&&(a, b)| !t.contains(a, b))
        .nth(pick)
        .expect("non-tree edge exists");
    let mut cycle = tree_path(t, inserted.0, inserted.1);
    cycle.push(inserted);
    let removed = cycle[rng.gen_range(0..cycle.len())];
    t.swap_edge(inserted, removed);
}

/// `K ~ Pois(1)` successive edge swaps.
pub fn mutate_tree<R: Rng + ?Sized>(t: &ClusterTree, h: &ClusterGraph, rng: &mut R) -> ClusterTree {
    let mut child = t.clone();
    for _ in 0..sample_poisson1(rng) {
        edge_swap(&mut child, h, rng);
    }
    child
}

/// Moves the element at position `from` so that it ends up at position `to`.
pub fn jump(order: &mut Vec<usize>, from: usize, to: usize) {
    let c = order.remove(from);
    order.insert(to, c);
}

/// `K ~ 1 + Pois(1)` jumps, each between two distinct uniform positions.
pub fn mutate_tour<R: Rng + ?Sized>(tour: &ClusterTour, rng: &mut R) -> ClusterTour {
    let m = tour.len();
    let mut child = tour.clone();
    if m < 2 {
        return child;
    }
    for _ in 0..1 + sample_poisson1(rng) {
        let from = rng.gen_range(0..m);
        let mut to = rng.gen_range(0..m - 1);
        if to >= from {
            to += 1;
        }
        jump(child.order_mut(), from, to);
    }
    child
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream_from_seed;

    #[test]
    fn jump_examples() {
        let mut order = vec![0, 1, 2, 3];
        jump(&mut order, 0, 2);
        assert_eq!(order, vec![1, 2, 0, 3]);
        for i in 0..3 {
            let mut order = vec![0, 1, 2, 3];
            jump(&mut order, i, i + 1);
            jump(&mut order, i + 1, i);
            assert_eq!(order, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn swap_on_star_is_noop() {
        let h = ClusterGraph::new(4, [(0, 1), (0, 2), (0, 3)]);
        let t = ClusterTree::in_graph(&h, h.edges().iter().copied()).unwrap();
        let mut rng = stream_from_seed(4);
        for _ in 0..50 {
            assert_eq!(mutate_tree(&t, &h, &mut rng), t);
        }
    }

    #[test]
    fn triangle_swap_removes_each_cycle_edge() {
        // t = {ab, bc}; the only outside edge is ca, closing the full triangle
        let h = ClusterGraph::complete(3);
        let t = ClusterTree::new(3, [(0, 1), (1, 2)]).unwrap();
        let mut rng = stream_from_seed(5);
        let mut seen = [0usize; 3];
        let draws = 30_000;
        for _ in 0..draws {
            let mut child = t.clone();
            edge_swap(&mut child, &h, &mut rng);
            let missing = [(0, 1), (1, 2), (0, 2)].iter().position(|&(a, b)| !child.contains(a, b)).unwrap();
            seen[missing] += 1;
        }
        for count in seen {
            let f = count as f64 / draws as f64;
            assert!((f - 1.0 / 3.0).abs() < 0.02, "{seen:?}");
        }
    }

    #[test]
    fn singleton_clusters_never_change() {
        let g = crate::generate_random(&[1, 1, 1], 5, 0).unwrap();
        let p = NodeSelection::first_nodes(&g);
        let mut rng = stream_from_seed(6);
        for _ in 0..100 {
            assert_eq!(mutate_selection(&p, &g, &mut rng), p);
        }
    }
}
