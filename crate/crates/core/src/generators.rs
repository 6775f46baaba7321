//! Hard-instance families and uniform random instances.
//!
//! Fractional costs of the hard families are multiplied by a per-instance
//! scale so that every stored cost is an exact integer.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::ClusteredGraph;

struct Matrix {
    n: usize,
    costs: Vec<Cost>,
}

impl Matrix {
    fn new(n: usize) -> Self {
        Matrix { n, costs: vec![Cost::INFINITE; n * n] }
    }

    fn edge(&mut self, u: usize, v: usize, w: u64) {
        self.arc(u, v, w);
        self.arc(v, u, w);
    }

    fn arc(&mut self, u: usize, v: usize, w: u64) {
        self.costs[u * self.n + v] = Cost::new(w);
    }
}

fn require_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::ParameterTooSmall { name: "m", value: m as u64, min: min as u64 });
    }
    Ok(())
}

/// Node id of the optimal node in cluster `c` of [`generate_gs`].
pub fn gs_optimal_node(m: usize, c: usize) -> usize {
    c * m
}

/// Hard instance for the spanned-nodes representation.
///
/// `n = m^2`, every cluster holds `m` nodes and node `c * m` is the optimal
/// node of cluster `c`. Cluster 0 is central; only central-peripheral pairs
/// have finite cost:
///
/// | peripheral \ central | optimal | suboptimal |
/// | :------------------- | ------: | ---------: |
/// | optimal              | 1       | n          |
/// | suboptimal           | n^2     | 2          |
pub fn generate_gs(m: usize) -> Result<ClusteredGraph> {
    require_m(m, 4)?;
    let n = m * m;
    let n64 = n as u64;
    let mut mat = Matrix::new(n);
    for p in m..n {
        let p_opt = p % m == 0;
        for c in 0..m {
            let c_opt = c == 0;
            let w = match (p_opt, c_opt) {
                (true, true) => 1,
                (false, false) => 2,
                (false, true) => n64 * n64,
                (true, false) => n64,
            };
            mat.edge(p, c, w);
        }
    }
    let cluster_of = (0..n).map(|v| v / m).collect();
    ClusteredGraph::new(cluster_of, mat.costs, 1, Some(Cost::new(m as u64 - 1)))
}

/// Node ids of the GMSTP hard instance for the global structure representation.
pub mod gg_mst_nodes {
    /// Cluster 0, attached to every peripheral cluster at unit cost.
    pub const V11: usize = 0;
    /// Cluster 0, attached only to `V21` at cost 1/2.
    pub const V12: usize = 1;
    /// The single node of cluster 1.
    pub const V21: usize = 2;
    /// The single node of peripheral cluster `c >= 2`.
    pub const fn peripheral(c: usize) -> usize {
        c + 1
    }
}

/// Hard instance for the tree-based EA, stored with scale `2m`.
///
/// Cluster 0 = {v11, v12}; clusters `1..m` are singletons, cluster 1 holding
/// v21. v11 reaches every peripheral at cost 1, v21 at cost 1 + 1/2m, and
/// v12-v21 costs 1/2. Everything else is infinite.
pub fn generate_gg_mst(m: usize) -> Result<ClusteredGraph> {
    use gg_mst_nodes::*;
    require_m(m, 4)?;
    let n = m + 1;
    let m64 = m as u64;
    let mut mat = Matrix::new(n);
    mat.edge(V12, V21, m64);
    for c in 2..m {
        mat.edge(V11, peripheral(c), 2 * m64);
        mat.edge(V21, peripheral(c), 2 * m64 + 1);
    }
    let mut cluster_of = vec![0, 0];
    cluster_of.extend(1..m);
    let optimum = m64 + (m64 - 2) * (2 * m64 + 1);
    ClusteredGraph::new(cluster_of, mat.costs, 2 * m64, Some(Cost::new(optimum)))
}

/// Node id of the black (optimal) node of cluster `c` in [`generate_gg_tsp`].
pub const fn gg_tsp_black(c: usize) -> usize {
    2 * c
}

/// Node id of the white node of cluster `c` in [`generate_gg_tsp`].
pub const fn gg_tsp_white(c: usize) -> usize {
    2 * c + 1
}

/// Hard GTSP instance for the tour-based EA, stored with scale `m`.
///
/// Costs are directed along the tour. With `next = (i + 1) mod m`:
/// black_i -> black_next costs 1/m, white_i -> white_next costs 2, any other
/// white -> white arc costs 1 and every remaining inter-cluster arc costs m^2.
/// For a tour that is not a rotation of the identity the decoded cost is
/// `m + S(tour)`; rotations of the identity decode to 1.
pub fn generate_gg_tsp(m: usize) -> Result<ClusteredGraph> {
    require_m(m, 4)?;
    let n = 2 * m;
    let m64 = m as u64;
    let mut mat = Matrix::new(n);
    for u in 0..n {
        for v in 0..n {
            let (cu, cv) = (u / 2, v / 2);
            if cu == cv {
                continue;
            }
            let successor = cv == (cu + 1) % m;
            let w = match (u % 2 == 0, v % 2 == 0) {
                (true, true) if successor => 1,
                (false, false) if successor => 2 * m64,
                (false, false) => m64,
                _ => m64 * m64 * m64,
            };
            mat.arc(u, v, w);
        }
    }
    let cluster_of = (0..n).map(|v| v / 2).collect();
    ClusteredGraph::new(cluster_of, mat.costs, m64, Some(Cost::new(m64)))
}

/// Random symmetric instance: cluster `i` has `sizes[i]` consecutive node ids,
/// every inter-cluster cost is uniform on `1..=max_cost`, intra-cluster costs
/// are infinite. Deterministic in `seed`.
pub fn generate_random(sizes: &[usize], max_cost: u64, seed: u64) -> Result<ClusteredGraph> {
    if sizes.len() < 2 {
        return Err(Error::TooFewClusters(sizes.len()));
    }
    if let Some(c) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::EmptyCluster(c));
    }
    if max_cost == 0 {
        return Err(Error::ParameterTooSmall { name: "max_cost", value: 0, min: 1 });
    }
    let cluster_of: Vec<usize> =
        sizes.iter().enumerate().flat_map(|(c, &s)| core::iter::repeat_n(c, s)).collect();
    let n = cluster_of.len();
    let mut rng = crate::stream_from_seed(seed);
    let mut mat = Matrix::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if cluster_of[u] != cluster_of[v] {
                mat.edge(u, v, rng.gen_range(1..=max_cost));
            }
        }
    }
    ClusteredGraph::new(cluster_of, mat.costs, 1, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_partition_and_diagonal(g: &ClusteredGraph) {
        let total: usize = (0..g.m()).map(|c| g.members(c).len()).sum();
        assert_eq!(total, g.n());
        for v in 0..g.n() {
            assert!(g.cost(v, v).is_infinite());
        }
    }

    #[test]
    fn gs_costs() {
        let g = generate_gs(4).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.known_optimum(), Some(Cost::new(3)));
        assert!(g.is_symmetric());
        check_partition_and_diagonal(&g);
        let (co, cs) = (0, 1);
        let (po, ps) = (4, 5);
        assert_eq!(g.cost(po, co), Cost::new(1));
        assert_eq!(g.cost(ps, co), Cost::new(256));
        assert_eq!(g.cost(po, cs), Cost::new(16));
        assert_eq!(g.cost(ps, cs), Cost::new(2));
        assert!(g.cost(po, 8).is_infinite());
        assert!(g.cost(po, ps).is_infinite());
    }

    #[test]
    fn gs_cluster_graph_is_star() {
        let h = generate_gs(4).unwrap().cluster_graph();
        assert_eq!(h.edges(), &[(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn gg_mst_costs() {
        use gg_mst_nodes::*;
        let g = generate_gg_mst(4).unwrap();
        assert_eq!((g.n(), g.m(), g.scale()), (5, 4, 8));
        assert_eq!(g.known_optimum(), Some(Cost::new(22)));
        assert!(g.cost(V11, V21).is_infinite());
        assert_eq!(g.cost(V12, V21), Cost::new(4));
        assert_eq!(g.cost(V11, peripheral(3)), Cost::new(8));
        assert_eq!(g.cost(V21, peripheral(2)), Cost::new(9));
        assert!(g.cost(peripheral(2), peripheral(3)).is_infinite());
        check_partition_and_diagonal(&g);
        let h = g.cluster_graph();
        assert_eq!(h.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn gg_tsp_costs() {
        let g = generate_gg_tsp(4).unwrap();
        assert_eq!((g.n(), g.scale()), (8, 4));
        assert_eq!(g.known_optimum(), Some(Cost::new(4)));
        assert!(!g.is_symmetric());
        check_partition_and_diagonal(&g);
        assert_eq!(g.cost(gg_tsp_black(3), gg_tsp_black(0)), Cost::new(1));
        assert_eq!(g.cost(gg_tsp_black(0), gg_tsp_black(3)), Cost::new(64));
        assert_eq!(g.cost(gg_tsp_white(1), gg_tsp_white(2)), Cost::new(8));
        assert_eq!(g.cost(gg_tsp_white(2), gg_tsp_white(1)), Cost::new(4));
        assert_eq!(g.cost(gg_tsp_white(0), gg_tsp_black(1)), Cost::new(64));
    }

    #[test]
    fn small_m_rejected() {
        assert!(generate_gs(3).is_err());
        assert!(generate_gg_mst(3).is_err());
        assert!(generate_gg_tsp(3).is_err());
    }

    #[test]
    fn random_instances() {
        let g = generate_random(&[1, 1], 1, 0).unwrap();
        assert_eq!(g.cost(0, 1), Cost::new(1));
        let a = generate_random(&[3, 2, 4], 50, 9).unwrap();
        let b = generate_random(&[3, 2, 4], 50, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.is_symmetric());
        check_partition_and_diagonal(&a);
        assert_eq!(a.cluster_graph().edges().len(), 3);
        assert!(generate_random(&[2, 0], 5, 1).is_err());
        assert!(generate_random(&[2], 5, 1).is_err());
        assert!(generate_random(&[2, 2], 0, 1).is_err());
    }
}
