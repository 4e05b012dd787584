//! Command line front end for the experiment runner.
//!
//! Verbs:
//! * `run`      — train and compare methods over the configured series
//! * `inject`   — write normalized/anomalous series and zone masks
//! * `transfer` — retrain a standard LSTM on previously corrected series
//! * `report`   — merge run reports and summarize per method
//!
//! `run` and `inject` read a TOML experiment config; most fields can be
//! overridden from the command line. The resolved config is written next to
//! the outputs. Exit code is non-zero when any cell failed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pastprop::data::{AnomalySpec, CsvLayout, MagnitudeLevel};
use pastprop::engine::{PastpropConfig, TopK, Variant};
use pastprop::eval::DistanceMetric;
use pastprop::experiment::{
    aggregate_reports, run_correction_transfer, run_experiment, run_injection, ExperimentConfig,
    ForecastMode, MethodConfig,
};

#[derive(Parser)]
#[command(
    name = "pastprop",
    about = "LSTM forecasting with data-correcting backpropagation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured experiment sweep.
    Run(RunArgs),
    /// Inject anomalies and export the damaged series plus zone masks.
    Inject(InjectArgs),
    /// Retrain a standard LSTM on the corrected series of a previous run.
    Transfer(TransferArgs),
    /// Merge reports from one or more runs and summarize per method.
    Report(ReportArgs),
}

#[derive(Args)]
struct ConfigOverrides {
    /// TOML experiment config; command line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Training input CSV files.
    #[arg(long = "input", num_args = 1..)]
    inputs: Vec<PathBuf>,
    /// Test CSV files used verbatim (skips the train/test split).
    #[arg(long = "test-input", num_args = 1..)]
    test_inputs: Vec<PathBuf>,
    /// Input layout: row-per-series or single-column.
    #[arg(long)]
    layout: Option<CsvLayout>,
    /// Leading fraction of each series used for training.
    #[arg(long)]
    train_fraction: Option<f64>,
    /// Seeds, comma separated.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Methods to run when no config file defines them, comma separated
    /// (standard, epoch-wise, instance-wise, selective).
    #[arg(long, value_delimiter = ',')]
    methods: Vec<Variant>,
    #[arg(long)]
    hidden_units: Option<usize>,
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long)]
    label_size: Option<usize>,
    /// Epochs for every method.
    #[arg(long)]
    epochs: Option<usize>,
    /// Learning rate for every method.
    #[arg(long)]
    learning_rate: Option<f64>,
    /// Data correction rate for every method.
    #[arg(long)]
    correction_rate: Option<f64>,
    /// Selective correction threshold for every method.
    #[arg(long)]
    correction_threshold: Option<f64>,
    /// Selective neighborhood radius for every method.
    #[arg(long)]
    neighborhood_size: Option<usize>,
    /// Selective epoch embargo for every method.
    #[arg(long)]
    epoch_embargo: Option<usize>,
    /// Selective top-k: "all", a count, a fraction or a percentage.
    #[arg(long)]
    top_k: Option<TopK>,
    /// Forecast mode: one-step-rolling or recursive.
    #[arg(long)]
    forecast: Option<ForecastMode>,
    /// Distance metric for reconstruction metrics: l1 or l2.
    #[arg(long)]
    distance: Option<DistanceMetric>,
    /// Anomaly zone start (with --anomaly-length enables injection).
    #[arg(long)]
    anomaly_start: Option<usize>,
    #[arg(long)]
    anomaly_length: Option<usize>,
    /// Anomaly magnitude level: 0, 25 or 50.
    #[arg(long)]
    anomaly_level: Option<MagnitudeLevel>,
    #[arg(long)]
    anomaly_chunks: Option<usize>,
    #[arg(long)]
    anomaly_seed: Option<u64>,
}

impl ConfigOverrides {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                ExperimentConfig::from_toml_str(&text)?
            }
            None => ExperimentConfig::default(),
        };

        if !self.inputs.is_empty() {
            config.inputs = self.inputs.clone();
        }
        if !self.test_inputs.is_empty() {
            config.test_inputs = self.test_inputs.clone();
        }
        if let Some(layout) = self.layout {
            config.layout = layout;
        }
        if let Some(fraction) = self.train_fraction {
            config.train_fraction = fraction;
        }
        if !self.seeds.is_empty() {
            config.seeds = self.seeds.clone();
        }
        if let Some(dir) = &self.output_dir {
            config.output_dir = dir.clone();
        }
        if let Some(mode) = self.forecast {
            config.forecast = mode;
        }
        if let Some(metric) = self.distance {
            config.distance = metric;
        }
        if let Some(h) = self.hidden_units {
            config.dims.hidden_units = h;
        }
        if let Some(s) = self.sample_size {
            config.dims.sample_size = s;
        }
        if let Some(l) = self.label_size {
            config.dims.label_size = l;
        }

        if !self.methods.is_empty() {
            if config.methods.is_empty() {
                config.methods = self
                    .methods
                    .iter()
                    .map(|&variant| {
                        MethodConfig::new(PastpropConfig {
                            variant,
                            ..PastpropConfig::default()
                        })
                    })
                    .collect();
            } else {
                // Config file defines methods; --methods narrows the list.
                let wanted: Vec<String> = self.methods.iter().map(|v| v.to_string()).collect();
                config
                    .methods
                    .retain(|m| wanted.contains(&m.pastprop.variant.to_string()));
                if config.methods.is_empty() {
                    bail!("--methods matched none of the config file's methods");
                }
            }
        }

        for method in &mut config.methods {
            let p = &mut method.pastprop;
            if let Some(e) = self.epochs {
                p.epochs = e;
            }
            if let Some(lr) = self.learning_rate {
                p.learning_rate = lr;
            }
            if let Some(rate) = self.correction_rate {
                p.correction_rate = rate;
            }
            if let Some(tc) = self.correction_threshold {
                p.correction_threshold = tc;
            }
            if let Some(s) = self.neighborhood_size {
                p.neighborhood_size = s;
            }
            if let Some(e) = self.epoch_embargo {
                p.epoch_embargo = e;
            }
            if let Some(k) = self.top_k {
                p.top_k = k;
            }
        }

        if let (Some(start), Some(length)) = (self.anomaly_start, self.anomaly_length) {
            config.anomaly = Some(AnomalySpec {
                start,
                length,
                level: self.anomaly_level.unwrap_or(MagnitudeLevel::Zero),
                chunk_count: self.anomaly_chunks.unwrap_or(4),
                seed: self.anomaly_seed.unwrap_or(0),
            });
        } else if let Some(spec) = &mut config.anomaly {
            if let Some(level) = self.anomaly_level {
                spec.level = level;
            }
            if let Some(chunks) = self.anomaly_chunks {
                spec.chunk_count = chunks;
            }
            if let Some(seed) = self.anomaly_seed {
                spec.seed = seed;
            }
        }

        Ok(config)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    overrides: ConfigOverrides,
}

#[derive(Args)]
struct InjectArgs {
    #[command(flatten)]
    overrides: ConfigOverrides,
    /// Directory for the normalized, anomalous and mask files
    /// (defaults to the configured output dir).
    #[arg(long)]
    into: Option<PathBuf>,
}

#[derive(Args)]
struct TransferArgs {
    /// Directory of a previous `run` (holds resolved_config.toml,
    /// report.json and the corrected series files).
    #[arg(long)]
    run_dir: PathBuf,
    /// Output directory (defaults to <run_dir>/transfer).
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Run directories to merge.
    #[arg(long = "run-dir", num_args = 1.., required = true)]
    run_dirs: Vec<PathBuf>,
    #[arg(long)]
    output_dir: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match execute(Cli::parse()) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                eprintln!("some cells failed; see the report for details");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Returns whether every cell succeeded.
fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run(args) => {
            let config = args.overrides.resolve()?;
            let report = run_experiment(&config)?;
            let errors = report.cells.iter().filter(|c| c.error.is_some()).count();
            println!(
                "{} cells ({} failed); reports in {}",
                report.cells.len(),
                errors,
                config.output_dir.display()
            );
            for summary_line in summarize(&report) {
                println!("{summary_line}");
            }
            Ok(!report.has_errors())
        }
        Command::Inject(args) => {
            let config = args.overrides.resolve()?;
            let out = args.into.unwrap_or_else(|| config.output_dir.clone());
            let written = run_injection(&config, &out)?;
            println!("wrote {} files to {}", written.len(), out.display());
            Ok(true)
        }
        Command::Transfer(args) => {
            let out = args
                .output_dir
                .unwrap_or_else(|| args.run_dir.join("transfer"));
            let report = run_correction_transfer(&args.run_dir, &out)?;
            println!(
                "{} transfer rows; reports in {}",
                report.rows.len(),
                out.display()
            );
            Ok(!report.has_errors())
        }
        Command::Report(args) => {
            let (merged, summaries) = aggregate_reports(&args.run_dirs, &args.output_dir)?;
            println!(
                "merged {} cells from {} runs into {}",
                merged.cells.len(),
                args.run_dirs.len(),
                args.output_dir.display()
            );
            for s in &summaries {
                println!(
                    "  {}: mean mse {}, {} cells, {} errors",
                    s.method,
                    s.mean_mse.map(|m| format!("{m:.6}")).unwrap_or_default(),
                    s.cells,
                    s.errors
                );
            }
            Ok(true)
        }
    }
}

/// Per-method mean test MSE lines for the run summary.
fn summarize(report: &pastprop::experiment::ExperimentReport) -> Vec<String> {
    let mut methods: Vec<&str> = report.cells.iter().map(|c| c.method.as_str()).collect();
    methods.sort();
    methods.dedup();
    methods
        .iter()
        .map(|method| {
            let mses: Vec<f64> = report
                .cells
                .iter()
                .filter(|c| c.method == *method)
                .filter_map(|c| c.mse)
                .collect();
            if mses.is_empty() {
                format!("  {method}: no successful cells")
            } else {
                format!(
                    "  {method}: mean test mse {:.6} over {} cells",
                    mses.iter().sum::<f64>() / mses.len() as f64,
                    mses.len()
                )
            }
        })
        .collect()
}
