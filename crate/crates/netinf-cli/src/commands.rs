//! The four pipeline commands. Each reads its inputs, runs the
//! corresponding library stage, writes fixed-name artifacts into the output
//! directory, and drops a manifest with digests and timings.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Subcommand};

use netinf_core::{
    accuracy_report, baseline_infer, influence_index, pr_sweep, run_greedy,
    generate_forest_fire, generate_kronecker, simulate_corpus, DirectedNetwork,
    ForestFireParams, IncubationModel, KroneckerParams, NodeId, SimulationParams,
    StoppingRule, Strategy, TransmissionConfig,
};

use crate::formats::{
    parse_cascades, parse_network, parse_ranked_edges, write_audit, write_bounds,
    write_cascades, write_coverage, write_curve, write_influence, write_metrics,
    write_network, write_ranked_edges, RankedEdge,
};
use crate::manifest::{write_atomic, ExperimentConfig, RunManifest};
use crate::CliError;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a ground-truth network (edge list + manifest).
    Generate(GenerateArgs),
    /// Simulate a cascade corpus over a network.
    Simulate(SimulateArgs),
    /// Infer a network from a cascade file.
    Infer(InferArgs),
    /// Score an inferred edge ranking against a ground-truth network.
    Evaluate(EvaluateArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Generator: kronecker | forestfire
    #[arg(long)]
    pub model: String,
    /// Kronecker 2x2 seed, row-major: a,b,c,d
    #[arg(long, value_delimiter = ',')]
    pub seed_matrix: Option<Vec<f64>>,
    /// Kronecker power (network has 2^power nodes)
    #[arg(long)]
    pub power: Option<u32>,
    /// Exact edge count target (Kronecker)
    #[arg(long)]
    pub edges: Option<usize>,
    /// Node count (Forest Fire)
    #[arg(long)]
    pub n: Option<usize>,
    /// Forward burning probability (Forest Fire)
    #[arg(long)]
    pub fwd: Option<f64>,
    /// Backward burning probability (Forest Fire)
    #[arg(long)]
    pub bwd: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Ground-truth network file (src,dst lines)
    #[arg(long)]
    pub network: PathBuf,
    /// Incubation model: exp | powerlaw
    #[arg(long, default_value = "exp")]
    pub dist: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Target fraction of true edges covered by at least one cascade
    #[arg(long)]
    pub coverage: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_cascades: usize,
    /// Fraction of infected nodes erased per cascade
    #[arg(long, default_value_t = 0.0)]
    pub missing: f64,
    /// Fraction of infected nodes re-timed as external infections
    #[arg(long, default_value_t = 0.0)]
    pub external: f64,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct InferArgs {
    /// Cascade file
    #[arg(long)]
    pub cascades: PathBuf,
    /// Algorithm: netinf | baseline
    #[arg(long, default_value = "netinf")]
    pub algo: String,
    /// Number of edges to infer
    #[arg(long)]
    pub k: Option<usize>,
    /// Stop once objective >= frac * online bound (netinf only)
    #[arg(long)]
    pub stop_frac: Option<f64>,
    /// Incubation model: exp | powerlaw
    #[arg(long, default_value = "exp")]
    pub dist: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Gain evaluation strategy: fast (lazy) | naive
    #[arg(long, default_value = "fast")]
    pub strategy: String,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    /// Inferred edge file (src,dst,delta,iteration lines)
    #[arg(long)]
    pub edges: PathBuf,
    /// Ground-truth network file
    #[arg(long)]
    pub truth: PathBuf,
    /// Also emit the per-node influence index of the inferred network
    #[arg(long)]
    pub influence: bool,
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate(args) => generate(args),
        Command::Simulate(args) => simulate(args),
        Command::Infer(args) => infer(args),
        Command::Evaluate(args) => evaluate(args),
    }
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Format(format!("cannot read {}: {e}", path.display())))
}

fn parse_dist(dist: &str) -> Result<IncubationModel, CliError> {
    match dist {
        "exp" => Ok(IncubationModel::Exponential),
        "powerlaw" => Ok(IncubationModel::PowerLaw),
        other => Err(CliError::Usage(format!("unknown --dist `{other}` (exp | powerlaw)"))),
    }
}

fn transmission_config(
    dist: &str,
    alpha: f64,
    beta: f64,
    epsilon: f64,
) -> Result<TransmissionConfig, CliError> {
    TransmissionConfig::new(parse_dist(dist)?, alpha, beta, epsilon)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn generate(args: GenerateArgs) -> Result<(), CliError> {
    ensure_out_dir(&args.out_dir)?;
    let mut config = ExperimentConfig {
        command: "generate".into(),
        model: Some(args.model.clone()),
        rng_seed: Some(args.rng_seed),
        out_dir: args.out_dir.display().to_string(),
        ..Default::default()
    };

    let started = Instant::now();
    let network = match args.model.as_str() {
        "kronecker" => {
            if args.n.is_some() || args.fwd.is_some() || args.bwd.is_some() {
                return Err(CliError::Usage(
                    "--n/--fwd/--bwd only apply to --model forestfire".into(),
                ));
            }
            let seed_matrix = args
                .seed_matrix
                .as_deref()
                .ok_or_else(|| CliError::Usage("kronecker requires --seed-matrix".into()))?;
            if seed_matrix.len() != 4 {
                return Err(CliError::Usage(format!(
                    "--seed-matrix needs 4 comma-separated entries, got {}",
                    seed_matrix.len()
                )));
            }
            let power = args
                .power
                .ok_or_else(|| CliError::Usage("kronecker requires --power".into()))?;
            let matrix = [[seed_matrix[0], seed_matrix[1]], [seed_matrix[2], seed_matrix[3]]];
            config.seed_matrix =
                Some([seed_matrix[0], seed_matrix[1], seed_matrix[2], seed_matrix[3]]);
            config.power = Some(power);
            config.edges = args.edges;
            let params =
                KroneckerParams { seed_matrix: matrix, power, target_edges: args.edges };
            generate_kronecker(&params, args.rng_seed)
                .map_err(|e| CliError::Usage(e.to_string()))?
        }
        "forestfire" => {
            if args.seed_matrix.is_some() || args.power.is_some() || args.edges.is_some() {
                return Err(CliError::Usage(
                    "--seed-matrix/--power/--edges only apply to --model kronecker".into(),
                ));
            }
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("forestfire requires --n".into()))?;
            let fwd = args.fwd.unwrap_or(0.0);
            let bwd = args.bwd.unwrap_or(0.0);
            config.n = Some(n);
            config.fwd = Some(fwd);
            config.bwd = Some(bwd);
            let params = ForestFireParams { n, forward_prob: fwd, backward_prob: bwd };
            generate_forest_fire(&params, args.rng_seed)
                .map_err(|e| CliError::Usage(e.to_string()))?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown --model `{other}` (kronecker | forestfire)"
            )))
        }
    };
    let generated = started.elapsed();

    let mut manifest = RunManifest::new(config);
    let network_path = args.out_dir.join("network.txt");
    let write_started = Instant::now();
    write_atomic(&network_path, &write_network(&network))?;
    manifest.record_output(&network_path)?;
    manifest.record_timing("generate", generated);
    manifest.record_timing("write", write_started.elapsed());
    manifest.write(&args.out_dir)?;

    println!("nodes={} edges={}", network.node_count(), network.edge_count());
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    ensure_out_dir(&args.out_dir)?;
    let config = transmission_config(&args.dist, args.alpha, args.beta, args.epsilon)?;
    for (flag, value) in [("--coverage", args.coverage)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(CliError::Usage(format!("{flag} must lie in [0, 1]")));
        }
    }

    let experiment = ExperimentConfig {
        command: "simulate".into(),
        dist: Some(args.dist.clone()),
        alpha: Some(args.alpha),
        beta: Some(args.beta),
        epsilon: Some(args.epsilon),
        coverage: Some(args.coverage),
        max_cascades: Some(args.max_cascades),
        missing: Some(args.missing),
        external: Some(args.external),
        rng_seed: Some(args.rng_seed),
        out_dir: args.out_dir.display().to_string(),
        ..Default::default()
    };
    let mut manifest = RunManifest::new(experiment);
    manifest.record_input(&args.network)?;

    let network = parse_network(&read_input(&args.network)?)?;
    let params = SimulationParams {
        config,
        coverage_target: args.coverage,
        max_cascades: args.max_cascades,
        missing_fraction: args.missing,
        external_fraction: args.external,
        rng_seed: args.rng_seed,
    };
    let started = Instant::now();
    let (set, stats) =
        simulate_corpus(&network, &params).map_err(|e| CliError::Usage(e.to_string()))?;
    manifest.record_timing("simulate", started.elapsed());

    let cascades_path = args.out_dir.join("cascades.txt");
    let coverage_path = args.out_dir.join("coverage.txt");
    write_atomic(&cascades_path, &write_cascades(&set))?;
    write_atomic(&coverage_path, &write_coverage(&stats))?;
    manifest.record_output(&cascades_path)?;
    manifest.record_output(&coverage_path)?;
    manifest.write(&args.out_dir)?;

    if !stats.target_reached {
        eprintln!(
            "warning: coverage target {} not reached (covered {:.4})",
            args.coverage, stats.covered_fraction
        );
    }
    println!(
        "cascades={} transmissions={} covered={:.4}",
        stats.num_cascades, stats.total_transmissions, stats.covered_fraction
    );
    Ok(())
}

fn infer(args: InferArgs) -> Result<(), CliError> {
    ensure_out_dir(&args.out_dir)?;
    let config = transmission_config(&args.dist, args.alpha, args.beta, args.epsilon)?;
    if args.k.is_some() && args.stop_frac.is_some() {
        return Err(CliError::Usage("--k and --stop-frac are mutually exclusive".into()));
    }
    if let Some(x) = args.stop_frac {
        if !(x > 0.0 && x < 1.0) {
            return Err(CliError::Usage(format!("--stop-frac {x} outside (0, 1)")));
        }
    }

    let experiment = ExperimentConfig {
        command: "infer".into(),
        algo: Some(args.algo.clone()),
        k: args.k,
        stop_frac: args.stop_frac,
        dist: Some(args.dist.clone()),
        alpha: Some(args.alpha),
        beta: Some(args.beta),
        epsilon: Some(args.epsilon),
        strategy: Some(args.strategy.clone()),
        out_dir: args.out_dir.display().to_string(),
        ..Default::default()
    };
    let mut manifest = RunManifest::new(experiment);
    manifest.record_input(&args.cascades)?;
    let set = parse_cascades(&read_input(&args.cascades)?)?;

    let started = Instant::now();
    let (ranked, audit_text, bounds_text) = match args.algo.as_str() {
        "netinf" => {
            let stopping = match (args.k, args.stop_frac) {
                (Some(k), None) => StoppingRule::FixedK(k),
                (None, Some(x)) => StoppingRule::BoundFraction(x),
                // Default stopping: objective at 85% of the online bound.
                (None, None) => StoppingRule::BoundFraction(0.85),
                (Some(_), Some(_)) => unreachable!("rejected above"),
            };
            let strategy = match args.strategy.as_str() {
                "fast" => Strategy::LazyLocalized,
                "naive" => Strategy::Naive,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown --strategy `{other}` (fast | naive)"
                    )))
                }
            };
            let run = run_greedy(&set, &config, stopping, strategy)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            let ranked: Vec<RankedEdge> = run
                .state
                .audit()
                .iter()
                .map(|r| RankedEdge { edge: r.edge, delta: r.gain, iteration: r.iteration })
                .collect();
            (ranked, write_audit(run.state.audit()), write_bounds(&run.bound_reports))
        }
        "baseline" => {
            if args.stop_frac.is_some() {
                return Err(CliError::Usage("--stop-frac only applies to --algo netinf".into()));
            }
            let k = args
                .k
                .ok_or_else(|| CliError::Usage("baseline requires --k".into()))?;
            if k == 0 {
                return Err(CliError::Usage("baseline requires --k >= 1".into()));
            }
            let ranked: Vec<RankedEdge> = baseline_infer(&set, &config, k)
                .iter()
                .enumerate()
                .map(|(i, s)| RankedEdge { edge: s.edge, delta: s.score, iteration: i + 1 })
                .collect();
            (ranked, String::new(), String::new())
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown --algo `{other}` (netinf | baseline)"
            )))
        }
    };
    manifest.record_timing("infer", started.elapsed());

    let edges_path = args.out_dir.join("edges.txt");
    write_atomic(&edges_path, &write_ranked_edges(&ranked))?;
    manifest.record_output(&edges_path)?;
    let audit_path = args.out_dir.join("audit.txt");
    write_atomic(&audit_path, &audit_text)?;
    manifest.record_output(&audit_path)?;
    let bounds_path = args.out_dir.join("bounds.txt");
    write_atomic(&bounds_path, &bounds_text)?;
    manifest.record_output(&bounds_path)?;
    manifest.write(&args.out_dir)?;

    println!("edges={}", ranked.len());
    Ok(())
}

fn evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    ensure_out_dir(&args.out_dir)?;
    let experiment = ExperimentConfig {
        command: "evaluate".into(),
        influence: Some(args.influence),
        out_dir: args.out_dir.display().to_string(),
        ..Default::default()
    };
    let mut manifest = RunManifest::new(experiment);
    manifest.record_input(&args.edges)?;
    manifest.record_input(&args.truth)?;

    let ranked = parse_ranked_edges(&read_input(&args.edges)?)?;
    let truth = parse_network(&read_input(&args.truth)?)?;
    let ordered: Vec<(NodeId, NodeId)> = ranked.iter().map(|r| r.edge).collect();

    let started = Instant::now();
    let curve = pr_sweep(&ordered, &truth).map_err(|e| CliError::Runtime(e.to_string()))?;
    let report = accuracy_report(&curve);
    manifest.record_timing("evaluate", started.elapsed());

    let curve_path = args.out_dir.join("pr_curve.txt");
    write_atomic(&curve_path, &write_curve(&curve))?;
    manifest.record_output(&curve_path)?;
    let metrics_path = args.out_dir.join("metrics.txt");
    write_atomic(&metrics_path, &write_metrics(&report))?;
    manifest.record_output(&metrics_path)?;

    if args.influence {
        // Influence over the inferred network, whose universe must cover
        // every ranked endpoint.
        let n = ordered
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .max()
            .map_or(0, |m| m as usize + 1);
        let mut inferred = DirectedNetwork::empty(n);
        for &(u, v) in &ordered {
            inferred.insert_edge(u, v);
        }
        let rows: Vec<(NodeId, f64)> = inferred
            .nodes()
            .map(|w| (w, influence_index(&inferred, w)))
            .collect();
        let influence_path = args.out_dir.join("influence.txt");
        write_atomic(&influence_path, &write_influence(&rows))?;
        manifest.record_output(&influence_path)?;
    }
    manifest.write(&args.out_dir)?;

    println!("bep={} auc={}", report.bep, report.auc);
    Ok(())
}
