//! Command-line front end: run built-in or custom experiments, apply a
//! procedure to a batch file, and print the two-unit ranking demonstration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use wfdr_core::batch_io::read_batch_file;
use wfdr_core::demo::ranking_demo;
use wfdr_core::lfdr::{estimate_lfdr, oracle_lfdr, two_sided_pvalue, LfdrOptions};
use wfdr_core::metrics::replication_metrics;
use wfdr_core::procedures::{
    adaptive_z, bh_step_up, oracle_procedure, pfer_oracle, procedure1, procedure2, ranking_order,
    wpo_stepwise, DecisionSet,
};
use wfdr_core::sim::{builtin_config, write_summary_csv, write_top_k_csv};
use wfdr_core::{
    run_experiment, Error, ExperimentConfig, GaussianComponent, GroupSpec, LfdrVector,
    MixtureModel, Procedure,
};

#[derive(Parser)]
#[command(
    name = "wfdr",
    version,
    about = "Weighted false discovery rate control: simulations and batch analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in or custom experiment and write CSV results plus a manifest.
    Simulate(SimulateArgs),
    /// Apply a procedure to a batch CSV and write per-hypothesis results.
    Analyze(AnalyzeArgs),
    /// Print the two-unit ranking demonstration table.
    DemoRanking(DemoArgs),
    /// List the built-in experiment configurations.
    ListConfigs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Path to a JSON experiment config.
    #[arg(long, conflicts_with = "builtin")]
    config: Option<PathBuf>,
    /// Name of a built-in experiment (see `list-configs`).
    #[arg(long)]
    builtin: Option<String>,
    /// Output directory for the CSV and manifest.
    #[arg(long)]
    out: PathBuf,
    /// Master seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Replication-count override.
    #[arg(long)]
    reps: Option<usize>,
    /// Worker threads (default: WFDR_THREADS or all cores; 1 = serial).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum LfdrMode {
    Oracle,
    Estimate,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input batch CSV (columns: x required; a, b, group, theta optional).
    #[arg(long)]
    input: PathBuf,
    /// Nominal level (for pfer-oracle: the expected-count budget).
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Procedure selector.
    #[arg(long, default_value = "dd")]
    method: String,
    /// Lfdr source.
    #[arg(long, value_enum, default_value = "estimate")]
    lfdr: LfdrMode,
    /// Null mean(s), one value or one per group, comma separated.
    #[arg(long, default_value = "0", value_delimiter = ',')]
    null_mean: Vec<f64>,
    /// Null sd(s), one value or one per group.
    #[arg(long, default_value = "1", value_delimiter = ',')]
    null_sd: Vec<f64>,
    /// Non-null mean(s); required for --lfdr oracle and oracle procedures.
    #[arg(long, value_delimiter = ',')]
    non_null_mean: Option<Vec<f64>>,
    /// Non-null sd(s); defaults to 1.
    #[arg(long, default_value = "1", value_delimiter = ',')]
    non_null_sd: Vec<f64>,
    /// Non-null proportion(s); required for --lfdr oracle.
    #[arg(long, value_delimiter = ',')]
    prop: Option<Vec<f64>>,
    /// Tail threshold of the proportion estimator.
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    /// Kernel bandwidth override (Silverman's rule when absent).
    #[arg(long)]
    bandwidth: Option<f64>,
    /// Minimum per-group sample size for estimation.
    #[arg(long, default_value_t = 50)]
    group_floor: usize,
    /// Seed for the oracle rule's randomized decision.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV for per-hypothesis results (summary JSON lands next to it).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DemoArgs {
    /// Level at which the value-to-cost ranking is formed.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Optional CSV copy of the table.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, err: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: err.to_string(),
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        // A bare group-floor error surfaces from `analyze` (exit 4); inside
        // a simulation it is wrapped in replication context and counts as a
        // runtime failure (exit 3).
        let code = match &err {
            Error::GroupBelowFloor { .. } => 4,
            _ => 3,
        };
        fail(code, err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Analyze(args) => analyze(args),
        Command::DemoRanking(args) => demo_ranking(args),
        Command::ListConfigs => list_configs(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn thread_count(requested: Option<usize>) -> usize {
    requested
        .or_else(|| {
            std::env::var("WFDR_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .filter(|n| *n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunManifest<'a> {
    name: &'a str,
    version: String,
    master_seed: u64,
    reps: usize,
    threads: usize,
    started_at_unix: u64,
    wall_time_seconds: f64,
    outputs: Vec<String>,
    config: &'a ExperimentConfig,
}

fn simulate(args: SimulateArgs) -> Result<(), Failure> {
    let mut config = match (&args.config, &args.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(2, format!("cannot read config {}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text).map_err(|e| fail(2, e))?
        }
        (None, Some(name)) => builtin_config(name).map_err(|e| fail(2, e))?,
        _ => {
            return Err(fail(
                2,
                "exactly one of --config or --builtin must be given",
            ))
        }
    };
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if let Some(reps) = args.reps {
        config.reps = reps;
    }
    config.validate().map_err(|e| fail(2, e))?;

    std::fs::create_dir_all(&args.out)
        .map_err(|e| fail(3, format!("cannot create {}: {e}", args.out.display())))?;

    let threads = thread_count(args.threads);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| fail(3, e))?;

    let started_at_unix = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let start = Instant::now();
    let summary = pool.install(|| run_experiment(&config))?;
    let wall = start.elapsed().as_secs_f64();

    let csv_path = args.out.join(format!("{}.csv", config.name));
    let file = std::fs::File::create(&csv_path).map_err(|e| fail(3, e))?;
    write_summary_csv(&summary, file)?;
    let mut outputs = vec![csv_path.display().to_string()];

    if !config.top_k.is_empty() {
        let topk_path = args.out.join(format!("{}_topk.csv", config.name));
        let file = std::fs::File::create(&topk_path).map_err(|e| fail(3, e))?;
        write_top_k_csv(&summary, file)?;
        outputs.push(topk_path.display().to_string());
    }

    let manifest_path = args.out.join(format!("{}.manifest.json", config.name));
    let manifest = RunManifest {
        name: &config.name,
        version: format!("wfdr {}", env!("CARGO_PKG_VERSION")),
        master_seed: config.master_seed,
        reps: config.reps,
        threads,
        started_at_unix,
        wall_time_seconds: wall,
        outputs: outputs.clone(),
        config: &config,
    };
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )
    .map_err(|e| fail(3, e))?;

    println!(
        "{}: {} rows in {:.1}s -> {}",
        config.name,
        summary.rows.len(),
        wall,
        csv_path.display()
    );
    Ok(())
}

fn spread_per_group(values: &[f64], n_groups: usize, what: &str) -> Result<Vec<f64>, Failure> {
    match values.len() {
        1 => Ok(vec![values[0]; n_groups]),
        n if n == n_groups => Ok(values.to_vec()),
        n => Err(fail(
            2,
            format!("{what}: expected 1 or {n_groups} value(s), got {n}"),
        )),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GroupSummary {
    group: usize,
    size: usize,
    rejections: usize,
    /// Largest two-sided p-value among this group's rejections.
    max_rejected_pvalue: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalysisSummary {
    input: String,
    method: String,
    alpha: f64,
    lfdr_source: String,
    hypotheses: usize,
    num_rejected: usize,
    threshold_k: usize,
    randomized_index: Option<usize>,
    randomized_probability: Option<f64>,
    groups: Vec<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realized_weighted_fdp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realized_weighted_true_positives: Option<f64>,
}

#[allow(clippy::needless_range_loop)] // rows collate many parallel columns
fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let method: Procedure = args.method.parse().map_err(|e| fail(2, e))?;
    let batch = read_batch_file(&args.input).map_err(|e| match e {
        Error::Io(inner) => fail(2, format!("cannot read {}: {inner}", args.input.display())),
        other => fail(2, other),
    })?;
    if !(0.0 < args.alpha && args.alpha < 1.0) && method != Procedure::PferOracle {
        return Err(fail(2, format!("alpha must lie in (0,1), got {}", args.alpha)));
    }

    let n_groups = batch.group.iter().max().copied().unwrap_or(0) + 1;
    let null_means = spread_per_group(&args.null_mean, n_groups, "--null-mean")?;
    let null_sds = spread_per_group(&args.null_sd, n_groups, "--null-sd")?;
    let nulls: Vec<GaussianComponent> = null_means
        .iter()
        .zip(&null_sds)
        .map(|(m, s)| GaussianComponent::new(*m, *s))
        .collect::<Result<_, _>>()
        .map_err(|e| fail(2, e))?;

    let needs_model = args.lfdr == LfdrMode::Oracle || method.needs_oracle();
    let model = if needs_model {
        let props = args.prop.as_deref().ok_or_else(|| {
            fail(2, "--prop is required for oracle lfdr / oracle procedures")
        })?;
        let alt_means = args.non_null_mean.as_deref().ok_or_else(|| {
            fail(2, "--non-null-mean is required for oracle lfdr / oracle procedures")
        })?;
        let props = spread_per_group(props, n_groups, "--prop")?;
        let alt_means = spread_per_group(alt_means, n_groups, "--non-null-mean")?;
        let alt_sds = spread_per_group(&args.non_null_sd, n_groups, "--non-null-sd")?;
        let mut sizes = vec![0usize; n_groups];
        for &g in &batch.group {
            sizes[g] += 1;
        }
        let groups: Result<Vec<GroupSpec>, Failure> = (0..n_groups)
            .map(|g| {
                Ok(GroupSpec {
                    size: sizes[g].max(1),
                    non_null_proportion: props[g],
                    null: nulls[g],
                    non_null: GaussianComponent::new(alt_means[g], alt_sds[g])
                        .map_err(|e| fail(2, e))?,
                })
            })
            .collect();
        Some(MixtureModel::new(groups?).map_err(|e| fail(2, e))?)
    } else {
        None
    };

    let lfdr: LfdrVector = match (args.lfdr, &model) {
        (LfdrMode::Oracle, Some(model)) => oracle_lfdr(model, &batch)?,
        (LfdrMode::Oracle, None) => unreachable!("model built above"),
        (LfdrMode::Estimate, _) => {
            let options = LfdrOptions {
                lambda: args.lambda,
                bandwidth: args.bandwidth,
                group_floor: args.group_floor,
                nulls: nulls.clone(),
            };
            estimate_lfdr(&batch, &options)?
        }
    };

    let pvals: Vec<f64> = batch
        .x
        .iter()
        .zip(&batch.group)
        .map(|(x, g)| two_sided_pvalue((x - nulls[*g].mean) / nulls[*g].sd))
        .collect();

    let decisions: DecisionSet = match method {
        Procedure::Dd => procedure1(&lfdr, &batch, args.alpha)?,
        Procedure::DdProportional => procedure2(&lfdr, &batch, args.alpha)?,
        Procedure::Az => adaptive_z(&lfdr, args.alpha)?,
        Procedure::Wpo => wpo_stepwise(&lfdr, &batch, args.alpha)?,
        Procedure::Bh97 => bh_step_up(&pvals, &batch.a, args.alpha)?,
        Procedure::Bh95 => bh_step_up(&pvals, &vec![1.0; batch.len()], args.alpha)?,
        Procedure::Oracle => {
            oracle_procedure(&lfdr, &batch, args.alpha, args.seed)?
        }
        Procedure::PferOracle => {
            pfer_oracle(model.as_ref().expect("model built above"), &batch, args.alpha)?
        }
    };

    let order = ranking_order(method, &lfdr, &batch, args.alpha, Some(&pvals))?;
    let mut rank = vec![0usize; batch.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos + 1;
    }

    // Per-hypothesis CSV.
    let file = std::fs::File::create(&args.out).map_err(|e| fail(3, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record([
        "index", "x", "a", "b", "group", "lfdr", "r_stat", "rank", "rejected",
    ])
    .map_err(Error::from)?;
    for i in 0..batch.len() {
        let r = wfdr_core::ranking::r_stat(lfdr.values[i], batch.a[i], batch.b[i], args.alpha);
        w.write_record([
            i.to_string(),
            batch.x[i].to_string(),
            batch.a[i].to_string(),
            batch.b[i].to_string(),
            batch.group[i].to_string(),
            lfdr.values[i].to_string(),
            r.to_string(),
            rank[i].to_string(),
            (decisions.reject[i] as u8).to_string(),
        ])
        .map_err(Error::from)?;
    }
    w.flush().map_err(|e| fail(3, e))?;

    // Group summaries with the largest rejected p-value per group.
    let mut groups = Vec::new();
    for g in 0..n_groups {
        let mut size = 0;
        let mut rejections = 0;
        let mut max_p: Option<f64> = None;
        for i in 0..batch.len() {
            if batch.group[i] != g {
                continue;
            }
            size += 1;
            if decisions.reject[i] {
                rejections += 1;
                max_p = Some(max_p.map_or(pvals[i], |m: f64| m.max(pvals[i])));
            }
        }
        groups.push(GroupSummary {
            group: g,
            size,
            rejections,
            max_rejected_pvalue: max_p,
        });
    }

    let realized = if batch.theta.is_some() {
        Some(replication_metrics(&decisions, &batch)?)
    } else {
        None
    };

    let summary = AnalysisSummary {
        input: args.input.display().to_string(),
        method: method.to_string(),
        alpha: args.alpha,
        lfdr_source: match args.lfdr {
            LfdrMode::Oracle => "oracle".into(),
            LfdrMode::Estimate => "estimated".into(),
        },
        hypotheses: batch.len(),
        num_rejected: decisions.num_rejected,
        threshold_k: decisions.threshold_trace.k,
        randomized_index: decisions.randomized.as_ref().map(|r| r.index),
        randomized_probability: decisions.randomized.as_ref().map(|r| r.accept_probability),
        groups,
        realized_weighted_fdp: realized.as_ref().map(|m| m.weighted_fdp),
        realized_weighted_true_positives: realized.as_ref().map(|m| m.weighted_true_pos),
    };

    let summary_path = summary_path_for(&args.out);
    std::fs::write(
        &summary_path,
        serde_json::to_string_pretty(&summary).expect("summary serializes"),
    )
    .map_err(|e| fail(3, e))?;

    println!(
        "{}: rejected {} of {} at alpha={} (k={})",
        summary.method, summary.num_rejected, summary.hypotheses, summary.alpha, summary.threshold_k
    );
    for g in &summary.groups {
        match g.max_rejected_pvalue {
            Some(p) => println!(
                "  group {}: {} of {} rejected, max rejected p-value {:.3e}",
                g.group, g.rejections, g.size, p
            ),
            None => println!("  group {}: 0 of {} rejected", g.group, g.size),
        }
    }
    if let Some(m) = &realized {
        println!(
            "  realized weighted FDP {:.4}, weighted true positives {:.2}",
            m.weighted_fdp, m.weighted_true_pos
        );
    }
    println!("  wrote {} and {}", args.out.display(), summary_path.display());
    Ok(())
}

fn summary_path_for(out: &Path) -> PathBuf {
    match out.extension().and_then(|e| e.to_str()) {
        Some("csv") => out.with_extension("summary.json"),
        _ => {
            let mut s = out.as_os_str().to_owned();
            s.push(".summary.json");
            PathBuf::from(s)
        }
    }
}

fn demo_ranking(args: DemoArgs) -> Result<(), Failure> {
    let table = ranking_demo(args.alpha)?;
    println!("ranking demonstration at alpha = {}", args.alpha);
    println!(
        "{:<5} {:>6} {:>7} {:>6} {:>9} {:>9} {:>10} {:>5}",
        "unit", "x", "b", "lfdr", "wpo", "vcr", "r", "rank"
    );
    for u in &table {
        println!(
            "{:<5} {:>6.2} {:>7.2} {:>6.3} {:>9.6} {:>9.1} {:>10.6} {:>5}",
            u.label, u.x, u.b, u.lfdr, u.wpo, u.vcr, u.r, u.rank
        );
    }
    let first = if table[0].rank == 1 { 'A' } else { 'B' };
    println!("order: {} first", first);
    if let Some(path) = &args.out {
        let file = std::fs::File::create(path).map_err(|e| fail(3, e))?;
        let mut w = csv::Writer::from_writer(file);
        w.write_record(["unit", "x", "b", "lfdr", "wpo", "vcr", "r", "rank"])
            .map_err(Error::from)?;
        for u in &table {
            w.write_record([
                u.label.to_string(),
                u.x.to_string(),
                u.b.to_string(),
                u.lfdr.to_string(),
                u.wpo.to_string(),
                u.vcr.to_string(),
                u.r.to_string(),
                u.rank.to_string(),
            ])
            .map_err(Error::from)?;
        }
        w.flush().map_err(|e| fail(3, e))?;
    }
    Ok(())
}

fn list_configs() -> Result<(), Failure> {
    for config in wfdr_core::builtin_configs() {
        let sweep = config
            .sweep
            .as_ref()
            .map(|s| format!("{} ({} values)", s.parameter.label(), s.values.len()))
            .unwrap_or_else(|| "none".into());
        let procedures: Vec<String> =
            config.procedures.iter().map(|p| p.to_string()).collect();
        println!(
            "{:<16} m={:<6} reps={:<4} sweep={:<28} procedures={}",
            config.name,
            config.model.total_size(),
            config.reps,
            sweep,
            procedures.join(",")
        );
    }
    Ok(())
}
