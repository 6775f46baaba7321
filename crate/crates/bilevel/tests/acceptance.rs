//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use bilevel::config::{Algorithm, ExperimentConfig, Family};
use bilevel::experiment::{certify, run_experiment, run_trials, TrialRecord};
use bilevel::stats::write_records_csv;
use bilevel::verify::{check_gmstp_case, check_gtsp_case};
use bilevel_core::mutation::{mutate_tour, mutate_tree};
use bilevel_core::oracle::enumerate_spanning_trees;
use bilevel_core::sampling::{sample_poisson1, uniform_spanning_tree, uniform_tour};
use bilevel_core::*;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn trajectory_decreasing(r: &TrialRecord) -> bool {
    r.trajectory.windows(2).all(|w| w[1].cost < w[0].cost && w[1].evaluation > w[0].evaluation)
}

fn random_instance<R: Rng>(rng: &mut R, m: usize, max_size: usize) -> ClusteredGraph {
    let sizes: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=max_size)).collect();
    let max_cost = rng.gen_range(1..=20);
    generate_random(&sizes, max_cost, rng.gen()).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = stream_from_seed(2024);
    let mut gmstp_fail = 0;
    for _ in 0..200 {
        let m = rng.gen_range(2..=5);
        let g = random_instance(&mut rng, m, 4);
        if let Some(why) = check_gmstp_case(&g, &mut rng).unwrap() {
            eprintln!("gmstp mismatch: {why}");
            gmstp_fail += 1;
        }
    }
    let mut gtsp_fail = 0;
    for _ in 0..100 {
        let g = random_instance(&mut rng, 4, 3);
        if let Some(why) = check_gtsp_case(&g, &mut rng).unwrap() {
            eprintln!("gtsp mismatch: {why}");
            gtsp_fail += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        gmstp_fail == 0 && gtsp_fail == 0 && secs < 60.0,
        format!("gmstp mismatches {gmstp_fail}/200, gtsp mismatches {gtsp_fail}/100, {secs:.2}s"),
    )
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                rec(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

fn gtsp_identity() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = 0;
    for m in [4usize, 5] {
        let g = generate_gg_tsp(m).unwrap();
        let scale = g.scale();
        for order in permutations(m) {
            let tour = ClusterTour::new(order).unwrap();
            let expected = if tour.is_rotation_of_identity() { scale } else { scale * (m as u64 + similarity(&tour) as u64) };
            checked += 1;
            if best_nodes_for_tour(&g, &tour).cost != Cost::new(expected) {
                bad += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(bad == 0 && secs < 60.0, format!("{checked} tours, {bad} mismatches, {secs:.2}s"))
}

fn tree_on_gs(all: &mut Vec<TrialRecord>) -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for m in [4usize, 6, 8] {
        let g = generate_gs(m).unwrap();
        let recs = run_trials(Algorithm::Tree, &g, 100, 1000, 300 + m as u64 * 1000, false).unwrap();
        let first = recs.iter().filter(|r| r.evaluations_to_optimum == Some(1)).count();
        pass &= first == 100;
        details.push(format!("m={m}: {first}/100 at evaluation 1"));
        all.extend(recs);
    }
    outcome(pass, details.join(", "))
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn cluster_on_gg_mst(all: &mut Vec<TrialRecord>) -> Outcome {
    let ms = [8usize, 16, 32, 64];
    let mut means = Vec::new();
    let mut pass = true;
    let mut details = Vec::new();
    for &m in &ms {
        let g = generate_gg_mst(m).unwrap();
        let recs = run_trials(Algorithm::Cluster, &g, 100, 100 * m as u64, 400 + m as u64 * 1000, false).unwrap();
        let hits: Vec<u64> = recs.iter().filter_map(|r| r.evaluations_to_optimum).collect();
        let mean = hits.iter().sum::<u64>() as f64 / hits.len().max(1) as f64;
        pass &= hits.len() == 100 && mean <= 10.0 * m as f64;
        details.push(format!("m={m}: success {}/100 mean {mean:.1}", hits.len()));
        means.push(mean);
        all.extend(recs);
    }
    let xs: Vec<f64> = ms.iter().map(|&m| m as f64).collect();
    let ls = least_squares_slope(&xs, &means);
    let endpoint = (means[3] - means[0]) / (xs[3] - xs[0]);
    let ratio = ls / endpoint;
    pass &= endpoint > 0.0 && (0.25..=4.0).contains(&ratio);
    details.push(format!("ls slope {ls:.3}, endpoint slope {endpoint:.3}"));
    outcome(pass, details.join(", "))
}

fn cluster_trapped_on_gs(all: &mut Vec<TrialRecord>) -> Outcome {
    let m = 6;
    let g = generate_gs(m).unwrap();
    let recs = run_trials(Algorithm::Cluster, &g, 50, 100_000, 500, false).unwrap();
    let successes = recs.iter().filter(|r| r.evaluations_to_optimum.is_some()).count();
    let plateau_cost = Cost::new(2 * (m as u64 - 1));
    let trapped = recs.iter().filter(|r| r.best_cost == plateau_cost && r.hit_local_plateau).count();
    all.extend(recs);
    outcome(successes * 10 <= 50 && trapped * 10 >= 50 * 9, format!("success {successes}/50, trapped at cost 10 {trapped}/50"))
}

fn tour_trapped_on_gg_tsp(all: &mut Vec<TrialRecord>) -> Outcome {
    let m = 16u64;
    let g = generate_gg_tsp(m as usize).unwrap();
    let recs = run_trials(Algorithm::Tour, &g, 50, 100_000, 600, false).unwrap();
    let failures: Vec<&TrialRecord> = recs.iter().filter(|r| r.evaluations_to_optimum.is_none()).collect();
    let successes = 50 - failures.len();
    let trapped = failures
        .iter()
        .filter(|r| r.final_similarity == Some(0) && r.best_cost == Cost::new(m * m))
        .count();
    let pass = successes * 10 <= 50 && trapped * 10 >= failures.len() * 9;
    let detail = format!("success {successes}/50, S=0 at cost {} in {trapped}/{} failures", m * m, failures.len());
    all.extend(recs);
    outcome(pass, detail)
}

fn tour_competence(all: &mut Vec<TrialRecord>) -> Outcome {
    let mut rng = stream_from_seed(700);
    let mut hits = 0;
    let mut worst = 20;
    for i in 0..20u64 {
        let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=4)).collect();
        let g = certify(generate_random(&sizes, 100, rng.gen()).unwrap(), Algorithm::Tour).unwrap();
        let recs = run_trials(Algorithm::Tour, &g, 20, 100_000, 7000 + 100 * i, false).unwrap();
        let k = recs.iter().filter(|r| r.evaluations_to_optimum.is_some()).count();
        hits += k;
        worst = worst.min(k);
        all.extend(recs);
    }
    outcome(hits * 100 >= 400 * 95, format!("{hits}/400 runs optimal, worst instance {worst}/20"))
}

fn samplers() -> Outcome {
    let mut rng = stream_from_seed(800);
    let draws = 1_000_000u64;
    let mut sum = 0u64;
    let mut zeros = 0u64;
    for _ in 0..draws {
        let k = sample_poisson1(&mut rng);
        sum += k as u64;
        zeros += (k == 0) as u64;
    }
    let mean = sum as f64 / draws as f64;
    let p0 = zeros as f64 / draws as f64;

    let h = ClusterGraph::complete(4);
    let trees = enumerate_spanning_trees(&h);
    let mut counts = vec![0u64; trees.len()];
    let wilson_draws = 100_000u64;
    for _ in 0..wilson_draws {
        let t = uniform_spanning_tree(&h, &mut rng).unwrap();
        counts[trees.iter().position(|s| s == &t).unwrap()] += 1;
    }
    let expected = wilson_draws as f64 / trees.len() as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new(trees.len() as f64 - 1.0).unwrap().inverse_cdf(1.0 - 1e-3);
    let all_seen = counts.iter().all(|&c| c > 0);
    outcome(
        (0.98..=1.02).contains(&mean) && (p0 - 0.3679).abs() <= 0.005 && trees.len() == 16 && all_seen && chi2 < critical,
        format!("poisson mean {mean:.4} P0 {p0:.4}; wilson {} trees, chi2 {chi2:.2} < {critical:.2}", trees.len()),
    )
}

fn structural(all: &[TrialRecord]) -> Outcome {
    let mut rng = stream_from_seed(900);
    let mut bad_trees = 0;
    let mut bad_tours = 0;
    for i in 0..10_000 {
        let m = rng.gen_range(2..=8);
        let h = if i % 2 == 0 { ClusterGraph::complete(m) } else { random_instance(&mut rng, m, 3).cluster_graph() };
        let t = uniform_spanning_tree(&h, &mut rng).unwrap();
        let child = mutate_tree(&t, &h, &mut rng);
        if ClusterTree::in_graph(&h, child.edges().iter().copied()).is_err() {
            bad_trees += 1;
        }
    }
    for _ in 0..10_000 {
        let m = rng.gen_range(2..=12);
        let child = mutate_tour(&uniform_tour(m, &mut rng), &mut rng);
        if child.len() != m || ClusterTour::new(child.order().to_vec()).is_err() {
            bad_tours += 1;
        }
    }
    let non_monotone = all.iter().filter(|r| !trajectory_decreasing(r)).count();

    let csv = |cfg: &ExperimentConfig| {
        let mut bytes = Vec::new();
        for group in run_experiment(cfg).unwrap() {
            write_records_csv(&mut bytes, &group.records).unwrap();
        }
        bytes
    };
    let mut identical = true;
    for (algo, family, ms) in [
        (Algorithm::Cluster, Family::GgMst, vec![6, 10]),
        (Algorithm::Tree, Family::GgMst, vec![5]),
        (Algorithm::Tour, Family::GgTsp, vec![6]),
    ] {
        let cfg = ExperimentConfig::new(algo, family, ms, 20, 5000, 31);
        identical &= csv(&cfg) == csv(&cfg);
    }
    outcome(
        bad_trees == 0 && bad_tours == 0 && non_monotone == 0 && identical,
        format!(
            "invalid trees {bad_trees}/10000, invalid tours {bad_tours}/10000, non-monotone runs {non_monotone}/{}, csv identical {identical}",
            all.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut records = Vec::new();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut run = |n: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        println!(
            "{} criterion {n} ({name}): {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        results.push((n, name, o));
    };
    run(1, "oracle equivalence", &mut oracle_equivalence);
    run(2, "gg-tsp cost identity", &mut gtsp_identity);
    run(3, "tree EA on gs", &mut || tree_on_gs(&mut records));
    run(4, "cluster EA on gg-mst", &mut || cluster_on_gg_mst(&mut records));
    run(5, "cluster EA trapped on gs(6)", &mut || cluster_trapped_on_gs(&mut records));
    run(6, "tour EA trapped on gg-tsp(16)", &mut || tour_trapped_on_gg_tsp(&mut records));
    run(7, "tour EA on random instances", &mut || tour_competence(&mut records));
    run(8, "samplers", &mut samplers);
    let snapshot = records.clone();
    run(9, "structural properties", &mut || structural(&snapshot));
    let failed = results.iter().filter(|r| !r.2.pass).count();
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
