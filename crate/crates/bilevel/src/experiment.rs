//! Seeded multi-trial campaigns.

use std::fs;
use std::time::Instant;

use bilevel_core::oracle::{brute_force_gmstp, brute_force_gtsp};
use bilevel_core::{
    generate_gg_mst, generate_gg_tsp, generate_gs, generate_random, run_cluster_ea, run_tour_ea, run_tree_ea,
    similarity, stream_from_seed, ChangePoint, ClusteredGraph, Cost, RunOutcome,
};
use rayon::prelude::*;

use crate::config::{Algorithm, ExperimentConfig, Family};
use crate::error::HarnessError;
use crate::format::parse_instance;

/// Outcome of one seeded run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub seed: u64,
    pub evaluations_to_optimum: Option<u64>,
    pub best_cost: Cost,
    pub hit_local_plateau: bool,
    /// Only measured when timing is enabled.
    pub wall_ms: Option<u128>,
    pub evaluations: u64,
    /// Similarity of the final tour (tour runs only).
    pub final_similarity: Option<u64>,
    pub final_genotype: String,
    pub trajectory: Vec<ChangePoint>,
}

/// All trials of one instance in a campaign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupResult {
    pub m: usize,
    pub instance: ClusteredGraph,
    pub records: Vec<TrialRecord>,
}

fn record<G>(outcome: RunOutcome<G>, genotype: String) -> TrialRecord {
    TrialRecord {
        trial_index: 0,
        seed: 0,
        evaluations_to_optimum: outcome.evaluations_to_optimum,
        best_cost: outcome.best_cost,
        hit_local_plateau: outcome.hit_local_plateau,
        wall_ms: None,
        evaluations: outcome.evaluations,
        final_similarity: None,
        final_genotype: genotype,
        trajectory: outcome.trajectory,
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Runs one trial of `algorithm` with the stream seeded by `seed`.
pub fn run_single(
    algorithm: Algorithm,
    g: &ClusteredGraph,
    budget: u64,
    seed: u64,
    timing: bool,
) -> Result<TrialRecord, HarnessError> {
    let start = Instant::now();
    let mut rng = stream_from_seed(seed);
    let mut rec = match algorithm {
        Algorithm::Cluster => {
            let out = run_cluster_ea(g, budget, &mut rng)?;
            let genotype = join(out.genotype.chosen(), " ");
            record(out, genotype)
        }
        Algorithm::Tree => {
            let out = run_tree_ea(g, budget, &mut rng)?;
            let genotype = join(out.genotype.edges().iter().map(|(a, b)| format!("{a}-{b}")), ",");
            record(out, genotype)
        }
        Algorithm::Tour => {
            let out = run_tour_ea(g, budget, &mut rng)?;
            let genotype = join(out.genotype.order(), ",");
            let final_similarity = similarity(&out.genotype) as u64;
            let mut rec = record(out, genotype);
            rec.final_similarity = Some(final_similarity);
            rec
        }
    };
    rec.seed = seed;
    if timing {
        rec.wall_ms = Some(start.elapsed().as_millis());
    }
    Ok(rec)
}

/// Trials `0..trials` with seeds `base_seed + index`, ordered by index.
pub fn run_trials(
    algorithm: Algorithm,
    g: &ClusteredGraph,
    trials: u64,
    budget: u64,
    base_seed: u64,
    timing: bool,
) -> Result<Vec<TrialRecord>, HarnessError> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rec = run_single(algorithm, g, budget, base_seed.wrapping_add(i), timing)?;
            rec.trial_index = i;
            Ok(rec)
        })
        .collect()
}

/// Fills `known_optimum` by exhaustive search for the problem `algorithm` solves.
pub fn certify(g: ClusteredGraph, algorithm: Algorithm) -> Result<ClusteredGraph, HarnessError> {
    let optimum = if algorithm.solves_tsp() {
        brute_force_gtsp(&g)?.solution.cost
    } else {
        brute_force_gmstp(&g)?.cost
    };
    Ok(g.with_known_optimum(Some(optimum)))
}

/// The instances a configuration sweeps over, one per `m` (a single one for
/// `file` and for `random` with explicit sizes).
pub fn build_instances(cfg: &ExperimentConfig) -> Result<Vec<ClusteredGraph>, HarnessError> {
    let family_instance = |m: usize| -> Result<ClusteredGraph, HarnessError> {
        Ok(match cfg.family {
            Family::Gs => generate_gs(m)?,
            Family::GgMst => generate_gg_mst(m)?,
            Family::GgTsp => generate_gg_tsp(m)?,
            Family::Random | Family::File => unreachable!(),
        })
    };
    match cfg.family {
        Family::File => {
            let path = cfg.instance.as_ref().expect("validated");
            let text = fs::read_to_string(path).map_err(|e| HarnessError::Io(path.display().to_string(), e))?;
            Ok(vec![parse_instance(&text)?])
        }
        Family::Random => {
            let seed = cfg.instance_seed.unwrap_or(cfg.base_seed);
            let size_lists: Vec<Vec<usize>> = match &cfg.sizes {
                Some(s) => vec![s.clone()],
                None => cfg.m_values.iter().map(|&m| vec![cfg.cluster_size; m]).collect(),
            };
            size_lists
                .iter()
                .map(|sizes| certify(generate_random(sizes, cfg.max_cost, seed)?, cfg.algorithm))
                .collect()
        }
        _ => cfg.m_values.iter().map(|&m| family_instance(m)).collect(),
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<GroupResult>, HarnessError> {
    cfg.validate()?;
    build_instances(cfg)?
        .into_iter()
        .map(|g| {
            let records = run_trials(cfg.algorithm, &g, cfg.trials, cfg.budget, cfg.base_seed, cfg.timing)?;
            Ok(GroupResult { m: g.m(), instance: g, records })
        })
        .collect()
}
