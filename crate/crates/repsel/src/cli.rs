//! Command-line surface: `select`, `evaluate`, `compare`, and `gen-toy`.
//!
//! Every run is a pure function of (input bytes, flags, seed): outputs are
//! byte-identical across re-runs except for the manifest's wall-clock
//! duration. Each command writes a JSON manifest next to its primary output
//! recording the resolved parameters, the SHA-256 digest of the input file,
//! the tool version, and the duration.
//!
//! Exit codes: 0 success, 2 argument errors, 3 data validation errors,
//! 1 internal failures.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sha2::Digest;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::eval::{
    generate_toy, holdout_metrics, loo_metrics, ratio_sweep, sweep_csv, MetricsSource,
    DEFAULT_REPLICATES, DEFAULT_RIDGE_LAMBDA, MIN_REPLICATES,
};
use crate::sp_optimizer::{BatchSize, OptimizerConfig};
use crate::spnn::{select_random, select_spnn, SelectionSize};

pub const DEFAULT_RATIOS: &str = "0.1,0.15,0.2,0.25,0.35,0.5,0.66";

#[derive(Debug, Parser)]
#[command(
    name = "repsel",
    version,
    about = "Extract a representative validation subset from a labeled dataset and \
             compare it against random selection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Select a validation subset and write its row ids plus a JSON report.
    Select(SelectArgs),
    /// Score an existing validation split: holdout metrics plus
    /// leave-one-out metrics on the learning remainder.
    Evaluate(EvaluateArgs),
    /// Sweep validation ratios and emit the comparison table against the
    /// random baseline.
    Compare(CompareArgs),
    /// Generate the 2-D indicator-boundary toy dataset as CSV.
    GenToy(GenToyArgs),
}

fn parse_ratio(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("ratio must be in (0, 1], got {v}"))
    }
}

fn parse_batch_size(s: &str) -> std::result::Result<BatchSize, String> {
    match s {
        "auto" => Ok(BatchSize::Auto),
        "full" => Ok(BatchSize::Full),
        other => {
            let v: usize = other
                .parse()
                .map_err(|_| format!("expected `full`, `auto`, or a positive integer, got `{other}`"))?;
            if v == 0 {
                return Err("batch size must be at least 1".into());
            }
            Ok(BatchSize::Size(v))
        }
    }
}

#[derive(Debug, Args, Clone)]
pub struct OptimizerArgs {
    /// Iteration cap for the support-point optimizer.
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,

    /// Convergence threshold on the max per-point move (standardized space).
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,

    /// Optimizer batch: `full`, `auto`, or a row count.
    #[arg(long, value_parser = parse_batch_size, default_value = "auto")]
    pub batch_size: BatchSize,
}

impl OptimizerArgs {
    fn to_config(&self, seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            max_iters: self.max_iters,
            tol: self.tol,
            batch_size: self.batch_size,
            ..OptimizerConfig::new(1).with_seed(seed)
        }
    }

    fn batch_size_label(&self) -> String {
        match self.batch_size {
            BatchSize::Auto => "auto".into(),
            BatchSize::Full => "full".into(),
            BatchSize::Size(k) => k.to_string(),
        }
    }
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("size").required(true).multiple(false))]
pub struct SelectArgs {
    /// Input CSV with a header row.
    #[arg(long)]
    pub input: PathBuf,

    /// Name of the class-label column.
    #[arg(long)]
    pub label_col: String,

    /// Validation fraction of the dataset.
    #[arg(long, value_parser = parse_ratio, group = "size")]
    pub ratio: Option<f64>,

    /// Absolute validation size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), group = "size")]
    pub nv: Option<u64>,

    /// Selection method.
    #[arg(long, value_enum, default_value_t = MethodArg::Spnn)]
    pub method: MethodArg,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Where to write the selected row ids (CSV, one id per line).
    #[arg(long, default_value = "ids.csv")]
    pub out_ids: PathBuf,

    /// Where to write the JSON selection report.
    #[arg(long, default_value = "report.json")]
    pub report: PathBuf,

    /// Manifest path; defaults to `<out-ids>.manifest.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,

    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Spnn,
    Random,
}

impl std::fmt::Display for MethodArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MethodArg::Spnn => write!(f, "spnn"),
            MethodArg::Random => write!(f, "random"),
        }
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long)]
    pub label_col: String,

    /// CSV of validation row ids (header `row_id`).
    #[arg(long)]
    pub ids: PathBuf,

    /// Ridge penalty for the logistic model.
    #[arg(long, default_value_t = DEFAULT_RIDGE_LAMBDA)]
    pub ridge: f64,

    /// Where to write the JSON metrics (also printed to stdout).
    #[arg(long, default_value = "metrics.json")]
    pub out: PathBuf,

    /// Manifest path; defaults to `<out>.manifest.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long)]
    pub label_col: String,

    /// Comma-separated validation ratios to sweep.
    #[arg(long, default_value = DEFAULT_RATIOS)]
    pub ratios: String,

    /// Random-baseline replicates per ratio (at least 20).
    #[arg(long, default_value_t = DEFAULT_REPLICATES as u64,
          value_parser = clap::value_parser!(u64).range(MIN_REPLICATES as u64..))]
    pub replicates: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Ridge penalty for the logistic model.
    #[arg(long, default_value_t = DEFAULT_RIDGE_LAMBDA)]
    pub ridge: f64,

    /// Where to write the comparison table CSV.
    #[arg(long, default_value = "compare.csv")]
    pub out: PathBuf,

    /// Manifest path; defaults to `<out>.manifest.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,

    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Args)]
pub struct GenToyArgs {
    /// Number of rows.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(2..))]
    pub n: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output CSV path (columns x1, x2, y).
    #[arg(long)]
    pub out: PathBuf,

    /// Manifest path; defaults to `<out>.manifest.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// Reproducibility record written next to every command's primary output.
#[derive(Debug, serde::Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub seed: u64,
    /// SHA-256 of the raw input file; absent for generator commands.
    pub input_digest: Option<String>,
    pub tool_version: String,
    /// Wall-clock seconds; the only field that varies across re-runs.
    pub duration_seconds: f64,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Select(args) => run_select(&args),
        Command::Evaluate(args) => run_evaluate(&args),
        Command::Compare(args) => run_compare(&args),
        Command::GenToy(args) => run_gen_toy(&args),
    }
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(hex::encode(sha2::Sha256::digest(&bytes)))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    let json = serde_json::to_string_pretty(manifest)
        .map_err(|e| Error::Internal(format!("manifest serialization: {e}")))?;
    write_file(path, &format!("{json}\n"))
}

fn manifest_path(explicit: Option<&PathBuf>, primary: &Path) -> PathBuf {
    explicit.cloned().unwrap_or_else(|| {
        let mut name = primary.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    })
}

fn run_select(args: &SelectArgs) -> Result<()> {
    let started = Instant::now();
    let digest = sha256_file(&args.input)?;
    let data = Dataset::load_csv(&args.input, &args.label_col)?;
    let size = match (args.ratio, args.nv) {
        (Some(r), None) => SelectionSize::Ratio(r),
        (None, Some(k)) => SelectionSize::Count(k as usize),
        _ => unreachable!("clap enforces exactly one of --ratio/--nv"),
    };
    let config = args.optimizer.to_config(args.seed);
    let selection = match args.method {
        MethodArg::Spnn => select_spnn(&data, size, &config)?,
        MethodArg::Random => select_random(&data, size, args.seed)?,
    };

    write_file(&args.out_ids, &selection.ids_csv())?;
    let report = serde_json::to_string_pretty(&selection.report_json())
        .map_err(|e| Error::Internal(format!("report serialization: {e}")))?;
    write_file(&args.report, &format!("{report}\n"))?;

    let manifest = RunManifest {
        command: "select".into(),
        parameters: serde_json::json!({
            "input": args.input,
            "label_col": args.label_col,
            "ratio": args.ratio,
            "nv": selection.validation_ids.len(),
            "method": args.method.to_string(),
            "out_ids": args.out_ids,
            "report": args.report,
            "max_iters": args.optimizer.max_iters,
            "tol": args.optimizer.tol,
            "batch_size": args.optimizer.batch_size_label(),
        }),
        seed: args.seed,
        input_digest: Some(digest),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        duration_seconds: started.elapsed().as_secs_f64(),
    };
    write_manifest(&manifest_path(args.manifest.as_ref(), &args.out_ids), &manifest)
}

fn read_ids_csv(path: &Path) -> Result<Vec<usize>> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = content.lines();
    match lines.next() {
        Some("row_id") => {}
        other => {
            return Err(Error::invalid_data(format!(
                "{}: expected header `row_id`, found {:?}",
                path.display(),
                other.unwrap_or("")
            )))
        }
    }
    let mut ids = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let id: usize = line.trim().parse().map_err(|_| {
            Error::invalid_data(format!(
                "{}: line {}: `{line}` is not a row id",
                path.display(),
                i + 2
            ))
        })?;
        ids.push(id);
    }
    if ids.is_empty() {
        return Err(Error::invalid_data(format!(
            "{}: no row ids found",
            path.display()
        )));
    }
    Ok(ids)
}

fn run_evaluate(args: &EvaluateArgs) -> Result<()> {
    let started = Instant::now();
    let digest = sha256_file(&args.input)?;
    let data = Dataset::load_csv(&args.input, &args.label_col)?;
    let ids = read_ids_csv(&args.ids)?;
    let (validation, train) = data.partition_rows(&ids)?;

    let validation_metrics = holdout_metrics(&train, &validation, args.ridge)?;
    let loo_train = loo_metrics(&train, args.ridge)?.with_source(MetricsSource::LooTrain);
    let metrics = serde_json::json!({
        "validation": validation_metrics,
        "loo_train": loo_train,
    });
    let rendered = serde_json::to_string_pretty(&metrics)
        .map_err(|e| Error::Internal(format!("metrics serialization: {e}")))?;
    println!("{rendered}");
    write_file(&args.out, &format!("{rendered}\n"))?;

    let manifest = RunManifest {
        command: "evaluate".into(),
        parameters: serde_json::json!({
            "input": args.input,
            "label_col": args.label_col,
            "ids": args.ids,
            "ridge": args.ridge,
            "out": args.out,
            "n_validation": validation.n_rows(),
            "n_train": train.n_rows(),
        }),
        seed: 0,
        input_digest: Some(digest),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        duration_seconds: started.elapsed().as_secs_f64(),
    };
    write_manifest(&manifest_path(args.manifest.as_ref(), &args.out), &manifest)
}

fn parse_ratio_list(list: &str) -> Result<Vec<f64>> {
    let mut ratios = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v = parse_ratio(part).map_err(Error::InvalidArgument)?;
        ratios.push(v);
    }
    if ratios.is_empty() {
        return Err(Error::invalid_argument("no ratios given"));
    }
    Ok(ratios)
}

fn run_compare(args: &CompareArgs) -> Result<()> {
    let started = Instant::now();
    let digest = sha256_file(&args.input)?;
    let ratios = parse_ratio_list(&args.ratios)?;
    let data = Dataset::load_csv(&args.input, &args.label_col)?;
    let config = args.optimizer.to_config(args.seed);
    let rows = ratio_sweep(&data, &ratios, &config, args.replicates as usize, args.ridge)?;
    write_file(&args.out, &sweep_csv(&rows))?;

    let manifest = RunManifest {
        command: "compare".into(),
        parameters: serde_json::json!({
            "input": args.input,
            "label_col": args.label_col,
            "ratios": ratios,
            "replicates": args.replicates,
            "ridge": args.ridge,
            "out": args.out,
            "max_iters": args.optimizer.max_iters,
            "tol": args.optimizer.tol,
            "batch_size": args.optimizer.batch_size_label(),
        }),
        seed: args.seed,
        input_digest: Some(digest),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        duration_seconds: started.elapsed().as_secs_f64(),
    };
    write_manifest(&manifest_path(args.manifest.as_ref(), &args.out), &manifest)
}

fn run_gen_toy(args: &GenToyArgs) -> Result<()> {
    let started = Instant::now();
    let data = generate_toy(args.n as usize, args.seed)?;
    write_file(&args.out, &data.to_csv_string("y"))?;

    let manifest = RunManifest {
        command: "gen-toy".into(),
        parameters: serde_json::json!({
            "n": args.n,
            "out": args.out,
        }),
        seed: args.seed,
        input_digest: None,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        duration_seconds: started.elapsed().as_secs_f64(),
    };
    write_manifest(&manifest_path(args.manifest.as_ref(), &args.out), &manifest)
}
