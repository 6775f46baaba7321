use alloc::vec::Vec;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{ClusterGraph, ClusteredGraph};
use crate::UnionFind;

/// One chosen node per cluster: `chosen[i]` lies in cluster `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSelection {
    chosen: Vec<usize>,
}

impl NodeSelection {
    pub fn new(g: &ClusteredGraph, chosen: Vec<usize>) -> Result<Self> {
        if chosen.len() != g.m() {
            return Err(Error::InvalidGenotype("selection length differs from cluster count"));
        }
        for (i, &v) in chosen.iter().enumerate() {
            if v >= g.n() || g.cluster_of(v) != i {
                return Err(Error::InvalidGenotype("selected node lies outside its cluster"));
            }
        }
        Ok(NodeSelection { chosen })
    }

    pub(crate) fn from_vec(chosen: Vec<usize>) -> Self {
        NodeSelection { chosen }
    }

    /// The first node of every cluster.
    pub fn first_nodes(g: &ClusteredGraph) -> Self {
        NodeSelection { chosen: (0..g.m()).map(|c| g.members(c)[0]).collect() }
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn node(&self, cluster: usize) -> usize {
        self.chosen[cluster]
    }

    pub(crate) fn set(&mut self, cluster: usize, node: usize) {
        self.chosen[cluster] = node;
    }
}

/// A spanning tree over clusters, stored as sorted `(i, j)` pairs with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClusterTree {
    m: usize,
    edges: Vec<(usize, usize)>,
}

impl ClusterTree {
    /// Validates that `edges` form a spanning tree on `m` clusters.
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list: Vec<(usize, usize)> =
            edges.into_iter().map(|(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
        list.sort_unstable();
        if list.len() + 1 != m {
            return Err(Error::InvalidGenotype("a spanning tree has m - 1 edges"));
        }
        let mut uf = UnionFind::new(m);
        for &(a, b) in &list {
            if b >= m || a == b {
                return Err(Error::InvalidGenotype("tree edge endpoint out of range"));
            }
            if !uf.union(a, b) {
                return Err(Error::InvalidGenotype("tree edges contain a cycle"));
            }
        }
        Ok(ClusterTree { m, edges: list })
    }

    /// As [`ClusterTree::new`], additionally requiring every edge to exist in `h`.
    pub fn in_graph(h: &ClusterGraph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let t = Self::new(h.m(), edges)?;
        if t.edges.iter().any(|&(a, b)| !h.has_edge(a, b)) {
            return Err(Error::InvalidGenotype("tree edge missing from the cluster graph"));
        }
        Ok(t)
    }

    pub(crate) fn from_sorted_unchecked(m: usize, edges: Vec<(usize, usize)>) -> Self {
        ClusterTree { m, edges }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Adjacency lists of the tree.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.m];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Replaces edge `removed` by `inserted`; both given in any orientation.
    pub(crate) fn swap_edge(&mut self, inserted: (usize, usize), removed: (usize, usize)) {
        let norm = |(a, b): (usize, usize)| if a < b { (a, b) } else { (b, a) };
        let (ins, rem) = (norm(inserted), norm(removed));
        if ins == rem {
            return;
        }
        let pos = self.edges.binary_search(&rem).expect("removed edge not in tree");
        self.edges.remove(pos);
        let pos = self.edges.binary_search(&ins).unwrap_err();
        self.edges.insert(pos, ins);
    }
}

/// A cyclic visiting order of the clusters. Rotations and reversals are
/// distinct genotypes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClusterTour {
    order: Vec<usize>,
}

impl ClusterTour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        let mut seen = alloc::vec![false; m];
        for &c in &order {
            if c >= m || core::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidGenotype("tour is not a permutation of the clusters"));
            }
        }
        Ok(ClusterTour { order })
    }

    pub fn identity(m: usize) -> Self {
        ClusterTour { order: (0..m).collect() }
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        ClusterTour { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub(crate) fn order_mut(&mut self) -> &mut Vec<usize> {
        &mut self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True for `(k, k+1, ..., k-1)` in cyclic numeric order.
    pub fn is_rotation_of_identity(&self) -> bool {
        let m = self.order.len();
        (0..m).all(|i| self.order[(i + 1) % m] == (self.order[i] + 1) % m)
    }
}

/// Output of a lower-level decoder.
///
/// `structure_edges` holds the node-level edges realizing `cost`: tree edges
/// for GMSTP, tour arcs in visiting order for GTSP. It is empty when `cost` is
/// infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedSolution {
    pub selection: NodeSelection,
    pub cost: Cost,
    pub structure_edges: Vec<(usize, usize)>,
}

impl DecodedSolution {
    pub(crate) fn infeasible(g: &ClusteredGraph) -> Self {
        DecodedSolution {
            selection: NodeSelection::first_nodes(g),
            cost: Cost::INFINITE,
            structure_edges: Vec::new(),
        }
    }
}
