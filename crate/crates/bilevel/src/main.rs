use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use bilevel::config::{Algorithm, ExperimentConfig, Family};
use bilevel::experiment::{certify, run_experiment, run_single};
use bilevel::format::{parse_instance, write_instance};
use bilevel::stats::{summarize, write_records_csv, write_summary_csv};
use bilevel::verify::verify_oracles;
use bilevel_core::oracle::{brute_force_gmstp, brute_force_gtsp};
use bilevel_core::{
    best_nodes_for_tour, best_nodes_for_tree, generate_gg_mst, generate_gg_tsp, generate_gs, generate_random,
    mst_on_selection, ClusterTour, ClusterTree, ClusteredGraph, DecodedSolution, NodeSelection,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bilevel", version, about = "Bi-level evolutionary algorithms for clustered MST and TSP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance file.
    Generate {
        #[arg(long)]
        family: String,
        /// Number of clusters (hard families; random with uniform cluster size).
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated cluster sizes for the random family.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 3)]
        cluster_size: usize,
        #[arg(long, default_value_t = 100)]
        max_cost: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Store the brute-force optimum of the given problem in the header.
        #[arg(long, value_enum)]
        certify: Option<Problem>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a lower-level decoder or an exhaustive solver on an instance.
    Solve {
        #[arg(long, value_enum)]
        algo: Solver,
        #[arg(long)]
        instance: PathBuf,
        /// Cluster tree as `a-b,c-d,...`.
        #[arg(long)]
        tree: Option<String>,
        /// Cluster tour as `a,b,c,...`.
        #[arg(long)]
        tour: Option<String>,
        /// One node id per cluster, comma-separated.
        #[arg(long)]
        selection: Option<String>,
    },
    /// One seeded (1+1) EA run.
    Evolve {
        #[arg(long)]
        algo: String,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multi-trial campaign from a key=value config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Record CSV; with several m values one file per m is written as `<stem>.m<M>.csv`.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Fill the wall_ms column.
        #[arg(long)]
        timing: bool,
    },
    /// Compare fast decoders with exhaustive oracles on random instances.
    VerifyOracles {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Gmstp,
    Gtsp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    DpTree,
    ClusterOpt,
    Mst,
    BruteGmstp,
    BruteGtsp,
}

fn read_instance(path: &Path) -> Result<ClusteredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| anyhow!("bad integer `{t}`")))
        .collect()
}

fn parse_tree(m: usize, s: &str) -> Result<ClusterTree> {
    let edges = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.trim().split_once('-').ok_or_else(|| anyhow!("bad tree edge `{t}`"))?;
            Ok((a.parse()?, b.parse()?))
        })
        .collect::<Result<Vec<(usize, usize)>>>()?;
    Ok(ClusterTree::new(m, edges)?)
}

fn print_solution(out: &mut impl Write, d: &DecodedSolution) -> io::Result<()> {
    writeln!(out, "cost {}", d.cost)?;
    let sel: Vec<String> = d.selection.chosen().iter().map(|v| v.to_string()).collect();
    writeln!(out, "selection {}", sel.join(" "))?;
    let edges: Vec<String> = d.structure_edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    writeln!(out, "edges {}", edges.join(","))
}

fn generate(
    family: Family,
    m: Option<usize>,
    sizes: Option<Vec<usize>>,
    cluster_size: usize,
    max_cost: u64,
    seed: u64,
) -> Result<ClusteredGraph> {
    let need_m = || m.ok_or_else(|| anyhow!("--m is required for family {family}"));
    Ok(match family {
        Family::Gs => generate_gs(need_m()?)?,
        Family::GgMst => generate_gg_mst(need_m()?)?,
        Family::GgTsp => generate_gg_tsp(need_m()?)?,
        Family::Random => {
            let sizes = match sizes {
                Some(s) => s,
                None => vec![cluster_size; need_m()?],
            };
            generate_random(&sizes, max_cost, seed)?
        }
        Family::File => bail!("family `file` cannot be generated"),
    })
}

fn group_path(out: &Path, m: usize) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.m{m}.csv"))
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).with_context(|| format!("creating {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Generate { family, m, sizes, cluster_size, max_cost, seed, certify: problem, out: path } => {
            let family: Family = family.parse()?;
            let mut g = generate(family, m, sizes, cluster_size, max_cost, seed)?;
            if let Some(p) = problem {
                let algo = match p {
                    Problem::Gmstp => Algorithm::Tree,
                    Problem::Gtsp => Algorithm::Tour,
                };
                g = certify(g, algo)?;
            }
            fs::write(&path, write_instance(&g)).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "wrote {} (n={}, m={})", path.display(), g.n(), g.m())?;
        }
        Command::Solve { algo, instance, tree, tour, selection } => {
            let g = read_instance(&instance)?;
            match algo {
                Solver::DpTree => {
                    let tree = tree.ok_or_else(|| anyhow!("dp-tree needs --tree"))?;
                    let t = parse_tree(g.m(), &tree)?;
                    let t = ClusterTree::in_graph(&g.cluster_graph(), t.edges().iter().copied())?;
                    print_solution(&mut out, &best_nodes_for_tree(&g, &t))?;
                }
                Solver::ClusterOpt => {
                    let tour = tour.ok_or_else(|| anyhow!("cluster-opt needs --tour"))?;
                    let tour = ClusterTour::new(parse_list(&tour)?)?;
                    if tour.len() != g.m() {
                        bail!("tour has {} clusters, instance has {}", tour.len(), g.m());
                    }
                    print_solution(&mut out, &best_nodes_for_tour(&g, &tour))?;
                }
                Solver::Mst => {
                    let sel = selection.ok_or_else(|| anyhow!("mst needs --selection"))?;
                    let p = NodeSelection::new(&g, parse_list(&sel)?)?;
                    print_solution(&mut out, &mst_on_selection(&g, &p))?;
                }
                Solver::BruteGmstp => print_solution(&mut out, &brute_force_gmstp(&g)?)?,
                Solver::BruteGtsp => {
                    let opt = brute_force_gtsp(&g)?;
                    let order: Vec<String> = opt.tour.order().iter().map(|c| c.to_string()).collect();
                    writeln!(out, "tour {}", order.join(","))?;
                    print_solution(&mut out, &opt.solution)?;
                }
            }
        }
        Command::Evolve { algo, instance, budget, seed } => {
            let algo: Algorithm = algo.parse()?;
            let g = read_instance(&instance)?;
            let rec = run_single(algo, &g, budget, seed, false)?;
            writeln!(out, "best_cost {}", rec.best_cost)?;
            match rec.evaluations_to_optimum {
                Some(e) => writeln!(out, "evals_to_opt {e}")?,
                None => writeln!(out, "evals_to_opt -")?,
            }
            writeln!(out, "evaluations {}", rec.evaluations)?;
            writeln!(out, "plateau {}", rec.hit_local_plateau)?;
            if let Some(s) = rec.final_similarity {
                writeln!(out, "similarity {s}")?;
            }
            writeln!(out, "genotype {}", rec.final_genotype)?;
            for cp in &rec.trajectory {
                writeln!(out, "improved {} {}", cp.evaluation, cp.cost)?;
            }
        }
        Command::Experiment { config, out: csv_path, summary, timing } => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg: ExperimentConfig = text.parse().with_context(|| format!("parsing {}", config.display()))?;
            cfg.timing |= timing;
            let groups = run_experiment(&cfg)?;
            let mut stats = Vec::new();
            for group in &groups {
                let path = if groups.len() == 1 { csv_path.clone() } else { group_path(&csv_path, group.m) };
                write_records_csv(create(&path)?, &group.records)?;
                if let Some(s) = summarize(cfg.algorithm, cfg.family, group.m, &group.records) {
                    stats.push(s);
                }
            }
            write_summary_csv(&mut out, &stats)?;
            if let Some(path) = summary {
                write_summary_csv(create(&path)?, &stats)?;
            }
        }
        Command::VerifyOracles { count, seed } => {
            let report = verify_oracles(seed, count, &mut out)?;
            if !report.all_passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
