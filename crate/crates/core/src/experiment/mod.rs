//! Experiment orchestration: fair seed-controlled comparisons of the
//! training variants over one or more series, with reports, gain tables and
//! corrected-series exports.
//!
//! For every (series, seed) cell one weight initialization is drawn and
//! shared by every compared method, so differences in the report come from
//! the methods alone. Cells run in parallel; each cell is sequential inside,
//! and all output files are assembled in a fixed order so a rerun with the
//! same configuration reproduces every output byte.

mod config;
mod report;

pub use config::{ExperimentConfig, ForecastMode, MethodConfig};
pub use report::{
    CellReport, ExperimentReport, GainRow, MethodSummary, TransferReport, TransferRow,
};

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::data::{
    self, inject_anomaly, load_csv, write_series_csv, DataError, NormalizationParams,
    TimeSeriesRecord,
};
use crate::engine::{self, EngineError, PastpropConfig, Variant};
use crate::eval::{self, EvalError};
use crate::lstm::{predict, LstmDims, LstmError, LstmWeights};
use crate::numeric::SeededRng;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("report error: {0}")]
    Report(String),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Lstm(#[from] LstmError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExperimentError> {
    fs::write(path, contents).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_file(path: &Path) -> Result<String, ExperimentError> {
    fs::read_to_string(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// One series prepared for training: normalized, split, optionally damaged.
#[derive(Debug, Clone)]
struct PreparedSeries {
    id: String,
    /// Stable index used to derive per-series RNG streams.
    index: u64,
    series_length: usize,
    params: NormalizationParams,
    /// Clean normalized training series (pre-anomaly).
    original_train: Vec<f64>,
    /// Training series as the methods see it (anomalous when injection is on).
    train_input: Vec<f64>,
    /// Normalized test values.
    test: Vec<f64>,
    /// Anomaly zone mask over the training series, if an anomaly was injected.
    zone_mask: Option<Vec<bool>>,
}

fn prepare_series(
    record: &TimeSeriesRecord,
    index: u64,
    test_record: Option<&TimeSeriesRecord>,
    config: &ExperimentConfig,
) -> Result<PreparedSeries, ExperimentError> {
    let min_train = config.dims.sample_size + config.dims.label_size + 1;
    let (train_raw, test_raw) = match (config.split_spec(), test_record) {
        (data::SplitSpec::ExternalTest, Some(test)) => {
            (record.values.clone(), test.values.clone())
        }
        (data::SplitSpec::ExternalTest, None) => {
            return Err(ExperimentError::Config(format!(
                "series '{}' has no matching test series in the configured test inputs",
                record.id
            )))
        }
        (data::SplitSpec::Fraction(fraction), _) => {
            data::split(&record.values, fraction, min_train)?
        }
    };
    if train_raw.len() < min_train {
        return Err(DataError::TooShortToWindow {
            len: train_raw.len(),
            need: min_train,
        }
        .into());
    }

    // Normalization statistics come from the training portion only; test
    // values may fall outside [0, 1].
    let params = NormalizationParams::fit(&train_raw)?;
    let original_train = params.apply(&train_raw);
    let test = params.apply(&test_raw);

    let (train_input, zone_mask) = match &config.anomaly {
        Some(spec) => {
            let (damaged, mask) = inject_anomaly(&original_train, spec)?;
            (damaged, Some(mask))
        }
        None => (original_train.clone(), None),
    };

    Ok(PreparedSeries {
        id: record.id.clone(),
        index,
        series_length: record.values.len(),
        params,
        original_train,
        train_input,
        test,
        zone_mask,
    })
}

/// Produce test predictions and their aligned targets.
///
/// Rolling mode slides the input window over the observed series (training
/// tail first, then true test values) and predicts each label block whose
/// targets lie fully inside the test range. Recursive mode feeds its own
/// predictions forward instead of reading observed test values.
fn forecast(
    weights: &LstmWeights,
    train_context: &[f64],
    test: &[f64],
    dims: &LstmDims,
    mode: ForecastMode,
) -> Result<(Vec<f64>, Vec<f64>), ExperimentError> {
    let sample = dims.sample_size;
    let label = dims.label_size;
    if test.len() < label {
        return Err(ExperimentError::Config(format!(
            "test portion has {} points, need at least label_size {label}",
            test.len()
        )));
    }
    if train_context.len() < sample {
        return Err(ExperimentError::Config(format!(
            "training context has {} points, need at least sample_size {sample}",
            train_context.len()
        )));
    }

    match mode {
        ForecastMode::OneStepRolling => {
            let mut full = Vec::with_capacity(train_context.len() + test.len());
            full.extend_from_slice(train_context);
            full.extend_from_slice(test);
            let test_start = train_context.len();

            let mut preds = Vec::new();
            let mut targets = Vec::new();
            // Window starts whose label block is entirely inside the test range.
            let first = test_start - sample;
            let last = full.len() - sample - label;
            for start in first..=last {
                let p = predict(weights, &full[start..start + sample], dims)?;
                preds.extend_from_slice(&p);
                targets.extend_from_slice(&full[start + sample..start + sample + label]);
            }
            Ok((preds, targets))
        }
        ForecastMode::Recursive => {
            let mut context = train_context[train_context.len() - sample..].to_vec();
            let mut preds = Vec::new();
            while preds.len() < test.len() {
                let p = predict(weights, &context[context.len() - sample..], dims)?;
                context.extend_from_slice(&p);
                preds.extend_from_slice(&p);
            }
            preds.truncate(test.len());
            Ok((preds, test.to_vec()))
        }
    }
}

fn sanitize_id(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn corrected_file_name(series_id: &str, method: &str, seed: u64) -> String {
    format!(
        "{}__{}__seed{}.corrected.csv",
        sanitize_id(series_id),
        sanitize_id(method),
        seed
    )
}

fn empty_cell(series_id: &str, method: &MethodConfig, seed: u64, series_length: usize) -> CellReport {
    CellReport {
        series_id: series_id.to_string(),
        method: method.display_name(),
        variant: method.pastprop.variant.to_string(),
        seed,
        init_checksum: String::new(),
        series_length,
        train_len: 0,
        test_len: 0,
        norm_min: None,
        norm_max: None,
        mse: None,
        nmse: None,
        reconstruction_ability: None,
        outside_loss: None,
        corrected_distance: None,
        final_train_loss: None,
        total_correction_magnitude: None,
        loss_trace: Vec::new(),
        correction_magnitude: Vec::new(),
        corrected_series_file: None,
        error: None,
        wall_time_secs: 0.0,
    }
}

/// Train and evaluate every method of one (series, seed) cell.
fn run_cell(
    prepared: &PreparedSeries,
    seed: u64,
    config: &ExperimentConfig,
    output_dir: &Path,
) -> Vec<CellReport> {
    let mut rng = SeededRng::derive(seed, prepared.index);
    let init = LstmWeights::init_with_range(
        &config.dims,
        &mut rng,
        config.init_low,
        config.init_high,
    );
    let checksum = init
        .as_ref()
        .map(|w| format!("{:016x}", w.checksum()))
        .unwrap_or_default();

    config
        .methods
        .iter()
        .map(|method| {
            let started = Instant::now();
            let mut cell = empty_cell(&prepared.id, method, seed, prepared.series_length);
            cell.init_checksum = checksum.clone();
            cell.train_len = prepared.train_input.len();
            cell.test_len = prepared.test.len();
            cell.norm_min = Some(prepared.params.min);
            cell.norm_max = Some(prepared.params.max);

            let result = init.as_ref().map_err(|e| e.to_string()).and_then(|w0| {
                evaluate_method(prepared, method, w0.clone(), config, output_dir, &mut cell)
                    .map_err(|e| e.to_string())
            });
            if let Err(message) = result {
                cell.error = Some(message);
            }
            cell.wall_time_secs = started.elapsed().as_secs_f64();
            log::debug!(
                "cell {} / {} / seed {} finished in {:.2}s",
                cell.series_id,
                cell.method,
                seed,
                cell.wall_time_secs
            );
            cell
        })
        .collect()
}

fn evaluate_method(
    prepared: &PreparedSeries,
    method: &MethodConfig,
    initial_weights: LstmWeights,
    config: &ExperimentConfig,
    output_dir: &Path,
    cell: &mut CellReport,
) -> Result<(), ExperimentError> {
    let outcome = engine::train(
        &prepared.train_input,
        &config.dims,
        &method.pastprop,
        initial_weights,
    )?;

    // Test windows read observed data only: the training tail as the method
    // received it, then the true test values.
    let (preds, targets) = forecast(
        &outcome.weights,
        &prepared.train_input,
        &prepared.test,
        &config.dims,
        config.forecast,
    )?;
    cell.mse = Some(eval::mse(&preds, &targets)?);
    cell.nmse = eval::nmse(&preds, &targets).ok();

    cell.final_train_loss = outcome.loss_trace.last().copied();
    cell.total_correction_magnitude = Some(outcome.correction_magnitude.iter().sum());
    cell.corrected_distance = {
        let mut acc = 0.0;
        for (c, o) in outcome.corrected_series.iter().zip(&prepared.train_input) {
            acc += (c - o) * (c - o);
        }
        Some(acc.sqrt())
    };

    if let Some(mask) = &prepared.zone_mask {
        cell.reconstruction_ability = eval::reconstruction_ability(
            &prepared.original_train,
            &prepared.train_input,
            &outcome.corrected_series,
            mask,
            config.distance,
        )
        .ok();
        cell.outside_loss = Some(eval::outside_loss(
            &prepared.original_train,
            &outcome.corrected_series,
            mask,
            config.distance,
        )?);
    }

    let file_name = corrected_file_name(&prepared.id, &method.display_name(), cell.seed);
    write_series_csv(
        &output_dir.join(&file_name),
        &prepared.id,
        &outcome.corrected_series,
        config.layout,
    )?;
    cell.corrected_series_file = Some(file_name);

    cell.loss_trace = outcome.loss_trace;
    cell.correction_magnitude = outcome.correction_magnitude;
    Ok(())
}

fn load_all_inputs(
    config: &ExperimentConfig,
) -> Result<Vec<(TimeSeriesRecord, Option<TimeSeriesRecord>)>, ExperimentError> {
    let mut records = Vec::new();
    for path in &config.inputs {
        records.extend(load_csv(path, config.layout)?);
    }
    if config.test_inputs.is_empty() {
        return Ok(records.into_iter().map(|r| (r, None)).collect());
    }

    let mut test_records = Vec::new();
    for path in &config.test_inputs {
        test_records.extend(load_csv(path, config.layout)?);
    }
    // Match test series to training series by id, falling back to position
    // when the ids align nowhere (e.g. generated ids from the file stem).
    let by_id = |id: &str| test_records.iter().find(|t| t.id == id).cloned();
    let any_id_match = records.iter().any(|r| by_id(&r.id).is_some());
    Ok(records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let test = if any_id_match {
                by_id(&r.id)
            } else {
                test_records.get(i).cloned()
            };
            (r, test)
        })
        .collect())
}

fn compute_gains(cells: &[CellReport]) -> Vec<GainRow> {
    let mut gains = Vec::new();
    for cell in cells {
        if cell.variant == Variant::Standard.to_string() || cell.mse.is_none() {
            continue;
        }
        let standard = cells.iter().find(|c| {
            c.series_id == cell.series_id
                && c.seed == cell.seed
                && c.variant == Variant::Standard.to_string()
                && c.mse.is_some()
        });
        if let Some(standard) = standard {
            let standard_mse = standard.mse.unwrap();
            let method_mse = cell.mse.unwrap();
            gains.push(GainRow {
                series_id: cell.series_id.clone(),
                seed: cell.seed,
                method: cell.method.clone(),
                standard_mse,
                method_mse,
                gain: standard_mse - method_mse,
            });
        }
    }
    gains
}

/// Run the full sweep described by `config`.
///
/// Per-series failures are recorded in their report cells and do not abort
/// the sweep; configuration errors do.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    config.validate()?;
    fs::create_dir_all(&config.output_dir).map_err(|source| ExperimentError::Io {
        path: config.output_dir.clone(),
        source,
    })?;
    write_file(
        &config.output_dir.join("resolved_config.toml"),
        &config.to_toml_string()?,
    )?;

    let inputs = load_all_inputs(config)?;
    let started = Instant::now();

    // One work item per (series, seed); methods run inside the item so they
    // share the item's initial weights.
    let items: Vec<(usize, u64)> = (0..inputs.len())
        .flat_map(|s| config.seeds.iter().map(move |&seed| (s, seed)))
        .collect();

    let cell_groups: Vec<Vec<CellReport>> = items
        .par_iter()
        .map(|&(series_idx, seed)| {
            let (record, test_record) = &inputs[series_idx];
            match prepare_series(record, series_idx as u64, test_record.as_ref(), config) {
                Ok(prepared) => run_cell(&prepared, seed, config, &config.output_dir),
                Err(e) => config
                    .methods
                    .iter()
                    .map(|m| {
                        let mut cell = empty_cell(&record.id, m, seed, record.values.len());
                        cell.error = Some(e.to_string());
                        cell
                    })
                    .collect(),
            }
        })
        .collect();

    let cells: Vec<CellReport> = cell_groups.into_iter().flatten().collect();
    let gains = compute_gains(&cells);
    let report = ExperimentReport { cells, gains };

    write_report_files(&report, &config.output_dir)?;
    log::info!(
        "experiment finished: {} cells in {:.2}s ({} with errors)",
        report.cells.len(),
        started.elapsed().as_secs_f64(),
        report.cells.iter().filter(|c| c.error.is_some()).count()
    );
    Ok(report)
}

fn write_report_files(report: &ExperimentReport, dir: &Path) -> Result<(), ExperimentError> {
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| ExperimentError::Report(e.to_string()))?;
    write_file(&dir.join("report.json"), &json)?;
    write_file(&dir.join("report.csv"), &report.cells_csv())?;
    write_file(&dir.join("gains.csv"), &report.gains_csv())?;
    Ok(())
}

/// Retrain a standard LSTM on every corrected series a previous run wrote,
/// starting from the same initial weights the producer used, and compare
/// against the baseline trained on the data as given.
pub fn run_correction_transfer(
    run_dir: &Path,
    output_dir: &Path,
) -> Result<TransferReport, ExperimentError> {
    let config = ExperimentConfig::from_toml_str(&read_file(&run_dir.join("resolved_config.toml"))?)?;
    let report: ExperimentReport =
        serde_json::from_str(&read_file(&run_dir.join("report.json"))?)
            .map_err(|e| ExperimentError::Report(e.to_string()))?;

    fs::create_dir_all(output_dir).map_err(|source| ExperimentError::Io {
        path: output_dir.to_path_buf(),
        source,
    })?;

    let inputs = load_all_inputs(&config)?;
    let index_of = |id: &str| inputs.iter().position(|(r, _)| r.id == id);

    let mut rows = Vec::new();
    for cell in &report.cells {
        let Some(corrected_file) = &cell.corrected_series_file else {
            continue;
        };
        let mut row = TransferRow {
            series_id: cell.series_id.clone(),
            seed: cell.seed,
            producer_method: cell.method.clone(),
            baseline_mse: None,
            transfer_mse: None,
            gain: None,
            error: None,
        };

        let baseline = report
            .cells
            .iter()
            .find(|c| {
                c.series_id == cell.series_id
                    && c.seed == cell.seed
                    && c.variant == Variant::Standard.to_string()
            })
            .and_then(|c| c.mse);
        row.baseline_mse = baseline;

        let result = (|| -> Result<f64, ExperimentError> {
            let series_idx = index_of(&cell.series_id).ok_or_else(|| {
                ExperimentError::Report(format!(
                    "series '{}' from the report is not in the configured inputs",
                    cell.series_id
                ))
            })?;
            let (record, test_record) = &inputs[series_idx];
            let prepared =
                prepare_series(record, series_idx as u64, test_record.as_ref(), &config)?;

            let corrected = load_csv(&run_dir.join(corrected_file), config.layout)?
                .into_iter()
                .next()
                .ok_or_else(|| {
                    ExperimentError::Report(format!("{corrected_file}: no series found"))
                })?
                .values;
            if corrected.len() != prepared.train_input.len() {
                return Err(ExperimentError::Report(format!(
                    "{corrected_file}: corrected series has {} points, training split has {}",
                    corrected.len(),
                    prepared.train_input.len()
                )));
            }

            let method = config
                .methods
                .iter()
                .find(|m| m.display_name() == cell.method)
                .ok_or_else(|| {
                    ExperimentError::Report(format!(
                        "method '{}' from the report is not in the resolved config",
                        cell.method
                    ))
                })?;

            // Same derivation as the producer run: identical initial weights.
            let mut rng = SeededRng::derive(cell.seed, series_idx as u64);
            let w0 = LstmWeights::init_with_range(
                &config.dims,
                &mut rng,
                config.init_low,
                config.init_high,
            )?;

            let standard = PastpropConfig {
                variant: Variant::Standard,
                ..method.pastprop.clone()
            };
            let outcome = engine::train(&corrected, &config.dims, &standard, w0)?;
            let (preds, targets) = forecast(
                &outcome.weights,
                &corrected,
                &prepared.test,
                &config.dims,
                config.forecast,
            )?;
            Ok(eval::mse(&preds, &targets)?)
        })();

        match result {
            Ok(transfer_mse) => {
                row.transfer_mse = Some(transfer_mse);
                row.gain = baseline.map(|b| b - transfer_mse);
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }

    let transfer = TransferReport { rows };
    let json = serde_json::to_string_pretty(&transfer)
        .map_err(|e| ExperimentError::Report(e.to_string()))?;
    write_file(&output_dir.join("transfer.json"), &json)?;
    write_file(&output_dir.join("transfer.csv"), &transfer.to_csv())?;
    Ok(transfer)
}

/// Merge the reports of one or more runs and summarize per method.
pub fn aggregate_reports(
    run_dirs: &[PathBuf],
    output_dir: &Path,
) -> Result<(ExperimentReport, Vec<MethodSummary>), ExperimentError> {
    let mut merged = ExperimentReport::default();
    for dir in run_dirs {
        let report: ExperimentReport =
            serde_json::from_str(&read_file(&dir.join("report.json"))?)
                .map_err(|e| ExperimentError::Report(e.to_string()))?;
        merged.cells.extend(report.cells);
        merged.gains.extend(report.gains);
    }

    let mut methods: Vec<String> = merged.cells.iter().map(|c| c.method.clone()).collect();
    methods.sort();
    methods.dedup();

    let summaries: Vec<MethodSummary> = methods
        .iter()
        .map(|method| summarize_method(method, &merged.cells))
        .collect();
    let eval_rows = method_series_rows(&merged.cells);

    fs::create_dir_all(output_dir).map_err(|source| ExperimentError::Io {
        path: output_dir.to_path_buf(),
        source,
    })?;
    let json = serde_json::to_string_pretty(&serde_json::json!({
        "cells": merged.cells,
        "gains": merged.gains,
        "summary": summaries,
    }))
    .map_err(|e| ExperimentError::Report(e.to_string()))?;
    write_file(&output_dir.join("aggregate.json"), &json)?;
    write_file(&output_dir.join("aggregate.csv"), &merged.cells_csv())?;
    let mut summary_csv = String::from(MethodSummary::csv_header());
    summary_csv.push('\n');
    for s in &summaries {
        summary_csv.push_str(&s.to_csv());
        summary_csv.push('\n');
    }
    write_file(&output_dir.join("summary.csv"), &summary_csv)?;
    write_file(
        &output_dir.join("method_series.csv"),
        &eval::rows_to_csv(&eval_rows),
    )?;
    write_file(
        &output_dir.join("method_series.json"),
        &serde_json::to_string_pretty(&eval_rows)
            .map_err(|e| ExperimentError::Report(e.to_string()))?,
    )?;
    Ok((merged, summaries))
}

/// One evaluation row per (series, method), metrics averaged across seeds.
fn method_series_rows(cells: &[CellReport]) -> Vec<eval::ReportRow> {
    let mut keys: Vec<(String, String, String)> = cells
        .iter()
        .map(|c| (c.series_id.clone(), c.method.clone(), c.variant.clone()))
        .collect();
    keys.sort();
    keys.dedup();

    keys.into_iter()
        .filter_map(|(series_id, method, variant)| {
            let mine: Vec<&CellReport> = cells
                .iter()
                .filter(|c| c.series_id == series_id && c.method == method)
                .collect();
            let mean = |extract: fn(&CellReport) -> Option<f64>| -> Option<f64> {
                let values: Vec<f64> = mine.iter().filter_map(|c| extract(c)).collect();
                (!values.is_empty())
                    .then(|| values.iter().sum::<f64>() / values.len() as f64)
            };
            Some(eval::ReportRow {
                id: series_id,
                variant,
                mse: mean(|c| c.mse)?,
                nmse: mean(|c| c.nmse).unwrap_or(f64::NAN),
                reconstruction_ability: mean(|c| c.reconstruction_ability),
                outside_loss: mean(|c| c.outside_loss),
                series_length: mine.first().map(|c| c.series_length).unwrap_or(0),
            })
        })
        .collect()
}

fn summarize_method(method: &str, cells: &[CellReport]) -> MethodSummary {
    let mine: Vec<&CellReport> = cells.iter().filter(|c| c.method == method).collect();
    let errors = mine.iter().filter(|c| c.error.is_some()).count();
    let mean = |extract: fn(&CellReport) -> Option<f64>| -> Option<f64> {
        let values: Vec<f64> = mine.iter().filter_map(|c| extract(c)).collect();
        if values.is_empty() {
            None
        } else {
            Some(values.iter().sum::<f64>() / values.len() as f64)
        }
    };

    let pairs: Vec<(f64, f64)> = mine
        .iter()
        .filter_map(|c| c.mse.map(|m| (c.series_length as f64, m)))
        .collect();
    let lengths: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mses: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let length_mse_correlation = eval::pearson(&lengths, &mses).ok();

    MethodSummary {
        method: method.to_string(),
        cells: mine.len(),
        errors,
        mean_mse: mean(|c| c.mse),
        mean_nmse: mean(|c| c.nmse),
        mean_reconstruction_ability: mean(|c| c.reconstruction_ability),
        mean_outside_loss: mean(|c| c.outside_loss),
        length_mse_correlation,
    }
}

/// Inject an anomaly into the training split of every input series and write
/// the normalized original, the damaged series and the zone mask.
pub fn run_injection(
    config: &ExperimentConfig,
    output_dir: &Path,
) -> Result<Vec<String>, ExperimentError> {
    if config.anomaly.is_none() {
        return Err(ExperimentError::Config("no anomaly spec given".into()));
    }
    if config.inputs.is_empty() {
        return Err(ExperimentError::Config("no input files given".into()));
    }
    fs::create_dir_all(output_dir).map_err(|source| ExperimentError::Io {
        path: output_dir.to_path_buf(),
        source,
    })?;

    let inputs = load_all_inputs(config)?;
    let mut written = Vec::new();
    for (idx, (record, test_record)) in inputs.iter().enumerate() {
        let prepared = prepare_series(record, idx as u64, test_record.as_ref(), config)?;
        let base = sanitize_id(&prepared.id);

        let original = format!("{base}.normalized.csv");
        write_series_csv(
            &output_dir.join(&original),
            &prepared.id,
            &prepared.original_train,
            config.layout,
        )?;
        let damaged = format!("{base}.anomalous.csv");
        write_series_csv(
            &output_dir.join(&damaged),
            &prepared.id,
            &prepared.train_input,
            config.layout,
        )?;

        let mask_name = format!("{base}.mask.csv");
        let mask = prepared.zone_mask.as_ref().expect("anomaly spec is set");
        let mut mask_csv = String::new();
        for &m in mask {
            mask_csv.push(if m { '1' } else { '0' });
            mask_csv.push('\n');
        }
        write_file(&output_dir.join(&mask_name), &mask_csv)?;

        written.push(original);
        written.push(damaged);
        written.push(mask_name);
    }
    Ok(written)
}
