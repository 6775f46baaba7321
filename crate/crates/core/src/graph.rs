use alloc::vec;
use alloc::vec::Vec;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::UnionFind;

/// A graph whose nodes are partitioned into clusters, with a dense cost
/// matrix. Costs may be asymmetric; GMSTP algorithms require symmetry and
/// check [`ClusteredGraph::is_symmetric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusteredGraph {
    cluster_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    costs: Vec<Cost>,
    scale: u64,
    known_optimum: Option<Cost>,
    symmetric: bool,
}

impl ClusteredGraph {
    /// Builds and validates an instance. `costs` is the row-major `n x n`
    /// matrix, `costs[u * n + v]` being the cost of travelling from `u` to `v`.
    pub fn new(
        cluster_of: Vec<usize>,
        costs: Vec<Cost>,
        scale: u64,
        known_optimum: Option<Cost>,
    ) -> Result<Self> {
        let n = cluster_of.len();
        let m = cluster_of.iter().map(|&c| c + 1).max().unwrap_or(0);
        if m < 2 {
            return Err(Error::TooFewClusters(m));
        }
        if scale == 0 {
            return Err(Error::ParameterTooSmall { name: "scale", value: 0, min: 1 });
        }
        if costs.len() != n * n {
            return Err(Error::MatrixShape { expected: n * n, found: costs.len() });
        }
        let mut members = vec![Vec::new(); m];
        for (v, &c) in cluster_of.iter().enumerate() {
            members[c].push(v);
        }
        if let Some(c) = members.iter().position(Vec::is_empty) {
            return Err(Error::EmptyCluster(c));
        }
        let mut max_finite = 0u64;
        let mut symmetric = true;
        for u in 0..n {
            if costs[u * n + u].is_finite() {
                return Err(Error::FiniteSelfLoop(u));
            }
            for v in 0..n {
                let c = costs[u * n + v];
                if let Some(w) = c.finite() {
                    max_finite = max_finite.max(w);
                }
                if c != costs[v * n + u] {
                    symmetric = false;
                }
            }
        }
        if (max_finite as u128) * (n as u128) * (n as u128) > Cost::MAX_FINITE as u128 {
            return Err(Error::CostOverflow);
        }
        Ok(ClusteredGraph { cluster_of, members, costs, scale, known_optimum, symmetric })
    }

    pub fn n(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn m(&self) -> usize {
        self.members.len()
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn clusters(&self) -> &[usize] {
        &self.cluster_of
    }

    /// Node ids of cluster `c`, ascending.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    #[inline]
    pub fn cost(&self, u: usize, v: usize) -> Cost {
        self.costs[u * self.n() + v]
    }

    /// Denominator: the true cost of a stored value `w` is `w / scale`.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn known_optimum(&self) -> Option<Cost> {
        self.known_optimum
    }

    pub fn with_known_optimum(mut self, optimum: Option<Cost>) -> Self {
        self.known_optimum = optimum;
        self
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Product of cluster sizes: the number of node selections.
    pub fn selection_count(&self) -> u128 {
        self.members.iter().fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
    }

    pub fn cluster_graph(&self) -> ClusterGraph {
        let m = self.m();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let linked = self.members[i].iter().any(|&u| {
                    self.members[j]
                        .iter()
                        .any(|&v| self.cost(u, v).is_finite() || self.cost(v, u).is_finite())
                });
                if linked {
                    edges.push((i, j));
                }
            }
        }
        ClusterGraph::from_sorted(m, edges)
    }
}

/// The contracted graph `H` with one node per cluster. An edge `{i, j}` is
/// present iff some node pair across clusters `i` and `j` has finite cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterGraph {
    m: usize,
    adjacent: Vec<bool>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl ClusterGraph {
    /// Builds a cluster graph from an arbitrary edge list. Self loops are
    /// dropped, duplicates merged.
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted(m, list)
    }

    fn from_sorted(m: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacent = vec![false; m * m];
        let mut neighbors = vec![Vec::new(); m];
        for &(a, b) in &edges {
            assert!(b < m, "edge endpoint out of range");
            adjacent[a * m + b] = true;
            adjacent[b * m + a] = true;
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        ClusterGraph { m, adjacent, edges, neighbors }
    }

    /// The complete graph on `m` clusters.
    pub fn complete(m: usize) -> Self {
        Self::new(m, (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.m && j < self.m && self.adjacent[i * self.m + j]
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.m);
        let mut parts = self.m;
        for &(a, b) in &self.edges {
            if uf.union(a, b) {
                parts -= 1;
            }
        }
        parts <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> ClusteredGraph {
        let inf = Cost::INFINITE;
        let c = |w| Cost::new(w);
        #[rustfmt::skip]
        let costs = vec![
            inf, inf, c(5), c(7),
            inf, inf, c(3), c(9),
            c(5), c(3), inf, inf,
            c(7), c(9), inf, inf,
        ];
        ClusteredGraph::new(vec![0, 0, 1, 1], costs, 1, None).unwrap()
    }

    #[test]
    fn accessors() {
        let g = two_by_two();
        assert_eq!((g.n(), g.m()), (4, 2));
        assert_eq!(g.members(1), &[2, 3]);
        assert!(g.is_symmetric());
        assert_eq!(g.selection_count(), 4);
        assert_eq!(g.cluster_graph().edges(), &[(0, 1)]);
    }

    #[test]
    fn rejects_bad_instances() {
        let inf = Cost::INFINITE;
        assert_eq!(
            ClusteredGraph::new(vec![0, 0], vec![inf; 4], 1, None),
            Err(Error::TooFewClusters(1))
        );
        assert_eq!(
            ClusteredGraph::new(vec![0, 2], vec![inf; 4], 1, None),
            Err(Error::EmptyCluster(1))
        );
        assert_eq!(
            ClusteredGraph::new(vec![0, 1], vec![Cost::new(1), inf, inf, inf], 1, None),
            Err(Error::FiniteSelfLoop(0))
        );
        assert!(matches!(
            ClusteredGraph::new(vec![0, 1], vec![inf; 3], 1, None),
            Err(Error::MatrixShape { .. })
        ));
        let big = Cost::new(u64::MAX / 2);
        assert_eq!(
            ClusteredGraph::new(vec![0, 1], vec![inf, big, big, inf], 1, None),
            Err(Error::CostOverflow)
        );
    }

    #[test]
    fn asymmetry_is_detected() {
        let inf = Cost::INFINITE;
        let g = ClusteredGraph::new(vec![0, 1], vec![inf, Cost::new(1), inf, inf], 1, None)
            .unwrap();
        assert!(!g.is_symmetric());
        assert_eq!(g.cluster_graph().edges(), &[(0, 1)]);
    }

    #[test]
    fn connectivity() {
        assert!(ClusterGraph::complete(4).is_connected());
        assert!(!ClusterGraph::new(4, [(0, 1), (2, 3)]).is_connected());
        let g = ClusterGraph::new(3, [(2, 0), (0, 2), (1, 1)]);
        assert_eq!(g.edges(), &[(0, 2)]);
        assert_eq!(g.neighbors(0), &[2]);
    }
}
