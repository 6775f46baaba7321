//! Cross-validation of the fast decoders against the exhaustive oracles on
//! random instances.

use std::io::Write;

use bilevel_core::oracle::{brute_force_gmstp, brute_nodes_for_tour, brute_nodes_for_tree, enumerate_spanning_trees};
use bilevel_core::sampling::{uniform_spanning_tree, uniform_tour};
use bilevel_core::{best_nodes_for_tour, best_nodes_for_tree, generate_random, stream_from_seed, ClusteredGraph};
use rand::Rng;

use crate::error::HarnessError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub gmstp_passed: u64,
    pub gmstp_failed: u64,
    pub gtsp_passed: u64,
    pub gtsp_failed: u64,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.gmstp_failed == 0 && self.gtsp_failed == 0
    }
}

fn random_instance<R: Rng>(rng: &mut R, m: usize, max_size: usize) -> Result<ClusteredGraph, HarnessError> {
    let sizes: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=max_size)).collect();
    let max_cost = rng.gen_range(1..=20);
    Ok(generate_random(&sizes, max_cost, rng.gen())?)
}

/// Checks one GMSTP instance: tree DP vs enumeration for a uniform tree, and
/// the global optimum vs the best tree decoding. Returns the failure reason.
pub fn check_gmstp_case<R: Rng>(g: &ClusteredGraph, rng: &mut R) -> Result<Option<String>, HarnessError> {
    let h = g.cluster_graph();
    let t = uniform_spanning_tree(&h, rng)?;
    let fast = best_nodes_for_tree(g, &t);
    let slow = brute_nodes_for_tree(g, &t)?;
    if fast != slow {
        return Ok(Some(format!(
            "tree decoder {} {:?} != brute force {} {:?}",
            fast.cost,
            fast.selection.chosen(),
            slow.cost,
            slow.selection.chosen()
        )));
    }
    let global = brute_force_gmstp(g)?.cost;
    let best_tree = enumerate_spanning_trees(&h).iter().map(|t| best_nodes_for_tree(g, t).cost).min();
    if best_tree != Some(global) {
        return Ok(Some(format!("best tree decoding {best_tree:?} != global optimum {global}")));
    }
    Ok(None)
}

/// Checks cluster optimisation against selection enumeration for a uniform tour.
pub fn check_gtsp_case<R: Rng>(g: &ClusteredGraph, rng: &mut R) -> Result<Option<String>, HarnessError> {
    let tour = uniform_tour(g.m(), rng);
    let fast = best_nodes_for_tour(g, &tour);
    let slow = brute_nodes_for_tour(g, &tour)?;
    if fast != slow {
        return Ok(Some(format!(
            "tour decoder {} {:?} != brute force {} {:?}",
            fast.cost,
            fast.selection.chosen(),
            slow.cost,
            slow.selection.chosen()
        )));
    }
    Ok(None)
}

/// `count` GMSTP cases (m in 2..=5, clusters of 1..=4 nodes) and `count` GTSP
/// cases (m = 4, clusters of 1..=3 nodes). One line per case goes to `out`.
pub fn verify_oracles<W: Write>(seed: u64, count: u64, mut out: W) -> Result<VerifyReport, HarnessError> {
    let io = |e| HarnessError::Io("output".into(), e);
    let mut rng = stream_from_seed(seed);
    let mut report = VerifyReport::default();
    for i in 0..count {
        let m = rng.gen_range(2..=5);
        let g = random_instance(&mut rng, m, 4)?;
        match check_gmstp_case(&g, &mut rng)? {
            None => {
                report.gmstp_passed += 1;
                writeln!(out, "gmstp {i} m={m} n={}: pass", g.n()).map_err(io)?;
            }
            Some(why) => {
                report.gmstp_failed += 1;
                writeln!(out, "gmstp {i} m={m} n={}: FAIL {why}", g.n()).map_err(io)?;
            }
        }
    }
    for i in 0..count {
        let g = random_instance(&mut rng, 4, 3)?;
        match check_gtsp_case(&g, &mut rng)? {
            None => {
                report.gtsp_passed += 1;
                writeln!(out, "gtsp {i} m=4 n={}: pass", g.n()).map_err(io)?;
            }
            Some(why) => {
                report.gtsp_failed += 1;
                writeln!(out, "gtsp {i} m=4 n={}: FAIL {why}", g.n()).map_err(io)?;
            }
        }
    }
    writeln!(
        out,
        "gmstp {}/{} passed, gtsp {}/{} passed",
        report.gmstp_passed, count, report.gtsp_passed, count
    )
    .map_err(io)?;
    Ok(report)
}
