//! Loading, normalizing, splitting and windowing univariate series, plus
//! artificial anomaly injection.
//!
//! Two CSV layouts are supported:
//!
//! * row layout — one series per row; if the first cell is not numeric it is
//!   taken as the series id, otherwise it is part of the values
//! * single-column layout — one value per line, with an optional non-numeric
//!   header line used as the id
//!
//! Normalization maps a series to `[0, 1]` by min/max; its parameters are
//! meant to be fit on the training split only and then applied to the test
//! split, so test values may land outside `[0, 1]`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::SeededRng;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: empty file")]
    EmptyFile { path: PathBuf },
    #[error("{path}: row {row}, column {col}: cannot parse '{content}' as a number")]
    NonNumericCell {
        path: PathBuf,
        row: usize,
        col: usize,
        content: String,
    },
    #[error("{path}: row {row}, column {col}: missing value")]
    MissingCell {
        path: PathBuf,
        row: usize,
        col: usize,
    },
    #[error("series is constant (min == max == {value}); cannot normalize")]
    ConstantSeries { value: f64 },
    #[error("series is empty")]
    EmptySeries,
    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),
    #[error("split of {len} points at fraction {fraction} leaves train={train_len}, test={test_len}; need train >= {min_train} and test >= 1")]
    SplitTooShort {
        len: usize,
        fraction: f64,
        train_len: usize,
        test_len: usize,
        min_train: usize,
    },
    #[error("series of {len} points is too short to window (need >= {need})")]
    TooShortToWindow { len: usize, need: usize },
    #[error("stride must be >= 1")]
    InvalidStride,
    #[error("anomaly zone [{start}, {end}) exceeds series length {len}")]
    ZoneOutOfRange { start: usize, end: usize, len: usize },
    #[error("anomaly zone must be non-empty")]
    EmptyZone,
    #[error("chunk_count must be >= 1")]
    InvalidChunkCount,
}

/// One univariate series in its original units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeriesRecord {
    pub id: String,
    pub values: Vec<f64>,
    /// Optional frequency tag (e.g. "hourly"); informational only.
    pub frequency: Option<String>,
}

/// Shape of a CSV input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CsvLayout {
    /// One series per row, optional id in the first cell.
    RowPerSeries,
    /// One value per line, optional header line.
    SingleColumn,
}

impl std::str::FromStr for CsvLayout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "row" | "row-per-series" | "rows" => Ok(CsvLayout::RowPerSeries),
            "column" | "single-column" | "col" => Ok(CsvLayout::SingleColumn),
            other => Err(format!(
                "unknown layout '{other}' (expected row-per-series or single-column)"
            )),
        }
    }
}

impl fmt::Display for CsvLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsvLayout::RowPerSeries => f.write_str("row-per-series"),
            CsvLayout::SingleColumn => f.write_str("single-column"),
        }
    }
}

/// How to obtain the test portion of a series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitSpec {
    /// Leading fraction of the series is the training portion.
    Fraction(f64),
    /// The whole input is training data; test values come from a separate
    /// file used verbatim.
    ExternalTest,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec::Fraction(0.7)
    }
}

/// Parse one CSV file into series records.
pub fn load_csv(path: &Path, layout: CsvLayout) -> Result<Vec<TimeSeriesRecord>, DataError> {
    let text = fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(DataError::EmptyFile {
            path: path.to_path_buf(),
        });
    }

    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".to_string());

    match layout {
        CsvLayout::RowPerSeries => {
            let mut records = Vec::new();
            for (row_idx, line) in lines.iter().enumerate() {
                let cells: Vec<&str> = line.split(',').collect();
                let mut values = Vec::with_capacity(cells.len());
                let mut id = None;
                for (col_idx, cell) in cells.iter().enumerate() {
                    let cell = cell.trim();
                    if cell.is_empty() {
                        return Err(DataError::MissingCell {
                            path: path.to_path_buf(),
                            row: row_idx + 1,
                            col: col_idx + 1,
                        });
                    }
                    match cell.parse::<f64>() {
                        Ok(v) => values.push(v),
                        Err(_) if col_idx == 0 => id = Some(cell.to_string()),
                        Err(_) => {
                            return Err(DataError::NonNumericCell {
                                path: path.to_path_buf(),
                                row: row_idx + 1,
                                col: col_idx + 1,
                                content: cell.to_string(),
                            })
                        }
                    }
                }
                if values.is_empty() {
                    return Err(DataError::EmptySeries);
                }
                records.push(TimeSeriesRecord {
                    id: id.unwrap_or_else(|| format!("{stem}_{}", row_idx + 1)),
                    values,
                    frequency: None,
                });
            }
            Ok(records)
        }
        CsvLayout::SingleColumn => {
            let mut values = Vec::with_capacity(lines.len());
            let mut id = stem;
            for (row_idx, line) in lines.iter().enumerate() {
                let cell = line.trim();
                match cell.parse::<f64>() {
                    Ok(v) => values.push(v),
                    Err(_) if row_idx == 0 => id = cell.to_string(),
                    Err(_) => {
                        return Err(DataError::NonNumericCell {
                            path: path.to_path_buf(),
                            row: row_idx + 1,
                            col: 1,
                            content: cell.to_string(),
                        })
                    }
                }
            }
            if values.is_empty() {
                return Err(DataError::EmptyFile {
                    path: path.to_path_buf(),
                });
            }
            Ok(vec![TimeSeriesRecord {
                id,
                values,
                frequency: None,
            }])
        }
    }
}

/// Write one series in the given layout. Values are printed with Rust's
/// shortest round-trip formatting so reading the file back reproduces the
/// exact same doubles.
pub fn write_series_csv(
    path: &Path,
    id: &str,
    values: &[f64],
    layout: CsvLayout,
) -> Result<(), DataError> {
    let mut out = String::new();
    match layout {
        CsvLayout::RowPerSeries => {
            out.push_str(id);
            for v in values {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        CsvLayout::SingleColumn => {
            for v in values {
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    fs::write(path, out).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Min/max statistics mapping a series onto `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub min: f64,
    pub max: f64,
}

impl NormalizationParams {
    /// Fit on a reference slice (normally the training split).
    pub fn fit(values: &[f64]) -> Result<Self, DataError> {
        if values.is_empty() {
            return Err(DataError::EmptySeries);
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in values {
            min = min.min(v);
            max = max.max(v);
        }
        if min == max {
            return Err(DataError::ConstantSeries { value: min });
        }
        Ok(NormalizationParams { min, max })
    }

    pub fn apply_value(&self, v: f64) -> f64 {
        (v - self.min) / (self.max - self.min)
    }

    pub fn invert_value(&self, v: f64) -> f64 {
        v * (self.max - self.min) + self.min
    }

    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        values.iter().map(|&v| self.apply_value(v)).collect()
    }

    pub fn invert(&self, values: &[f64]) -> Vec<f64> {
        values.iter().map(|&v| self.invert_value(v)).collect()
    }
}

/// Normalize a series to `[0, 1]`, returning the fitted parameters.
pub fn normalize(series: &[f64]) -> Result<(Vec<f64>, NormalizationParams), DataError> {
    let params = NormalizationParams::fit(series)?;
    Ok((params.apply(series), params))
}

/// Split a series into contiguous train/test parts, train first.
///
/// The train length is `floor(len * train_fraction)`. `min_train_len` is the
/// smallest usable training length (normally `sample_size + label_size + 1`).
pub fn split(
    series: &[f64],
    train_fraction: f64,
    min_train_len: usize,
) -> Result<(Vec<f64>, Vec<f64>), DataError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DataError::InvalidFraction(train_fraction));
    }
    let len = series.len();
    let train_len = (len as f64 * train_fraction).floor() as usize;
    let test_len = len - train_len;
    if train_len < min_train_len || test_len == 0 {
        return Err(DataError::SplitTooShort {
            len,
            fraction: train_fraction,
            train_len,
            test_len,
            min_train: min_train_len,
        });
    }
    Ok((series[..train_len].to_vec(), series[train_len..].to_vec()))
}

/// Index plan for sliding windows over a series.
///
/// Windows are not copied: each entry records the start index of an input
/// window; the label follows immediately after the window.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedDataset {
    pub starts: Vec<usize>,
    pub sample_size: usize,
    pub label_size: usize,
}

impl WindowedDataset {
    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// Input window `k` as a view into `series`.
    pub fn window<'a>(&self, series: &'a [f64], k: usize) -> &'a [f64] {
        let s = self.starts[k];
        &series[s..s + self.sample_size]
    }

    /// Label of window `k` as a view into `series`.
    pub fn label<'a>(&self, series: &'a [f64], k: usize) -> &'a [f64] {
        let s = self.starts[k] + self.sample_size;
        &series[s..s + self.label_size]
    }
}

/// Plan sliding windows of `sample_size` inputs and `label_size` labels.
pub fn make_windows(
    series: &[f64],
    sample_size: usize,
    label_size: usize,
    stride: usize,
) -> Result<WindowedDataset, DataError> {
    if stride == 0 {
        return Err(DataError::InvalidStride);
    }
    let need = sample_size + label_size;
    if series.len() < need || sample_size == 0 {
        return Err(DataError::TooShortToWindow {
            len: series.len(),
            need,
        });
    }
    let last_start = series.len() - need;
    let starts: Vec<usize> = (0..=last_start).step_by(stride).collect();
    Ok(WindowedDataset {
        starts,
        sample_size,
        label_size,
    })
}

/// Magnitude of an injected anomaly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum MagnitudeLevel {
    /// Replace the zone with zeros.
    Zero,
    /// Shift each value by at least 0.1, or 25% of it if larger.
    TwentyFive,
    /// Shift each value by at least 0.1, or 50% of it if larger.
    Fifty,
}

impl MagnitudeLevel {
    pub fn percentage(&self) -> u32 {
        match self {
            MagnitudeLevel::Zero => 0,
            MagnitudeLevel::TwentyFive => 25,
            MagnitudeLevel::Fifty => 50,
        }
    }
}

impl TryFrom<u32> for MagnitudeLevel {
    type Error = String;

    fn try_from(v: u32) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(MagnitudeLevel::Zero),
            25 => Ok(MagnitudeLevel::TwentyFive),
            50 => Ok(MagnitudeLevel::Fifty),
            other => Err(format!("magnitude level must be 0, 25 or 50, got {other}")),
        }
    }
}

impl From<MagnitudeLevel> for u32 {
    fn from(level: MagnitudeLevel) -> u32 {
        level.percentage()
    }
}

impl std::str::FromStr for MagnitudeLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: u32 = s
            .parse()
            .map_err(|_| format!("magnitude level must be 0, 25 or 50, got '{s}'"))?;
        MagnitudeLevel::try_from(v)
    }
}

/// Where and how to damage a (normalized) training series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalySpec {
    /// First index of the zone.
    pub start: usize,
    /// Zone length in time steps.
    pub length: usize,
    pub level: MagnitudeLevel,
    /// Chunks the zone is divided into for levels 25/50; each chunk draws
    /// its own add/subtract direction. Remainder goes to the last chunk.
    #[serde(default = "default_chunk_count")]
    pub chunk_count: usize,
    /// Seed for the per-chunk direction draws.
    #[serde(default)]
    pub seed: u64,
}

fn default_chunk_count() -> usize {
    4
}

/// Inject an artificial anomaly into a normalized series.
///
/// Level 0 zeroes the zone. Levels 25/50 split the zone into chunks, draw a
/// per-chunk sign, and shift every value by `sign * max(0.1, pct * value)`
/// where `pct` is 0.25 or 0.50 of the *original* value. Nothing outside the
/// zone is touched and results are not clamped, so values below zero can
/// occur. Returns the damaged series and a zone mask.
pub fn inject_anomaly(
    series: &[f64],
    spec: &AnomalySpec,
) -> Result<(Vec<f64>, Vec<bool>), DataError> {
    let end = spec.start + spec.length;
    if spec.length == 0 {
        return Err(DataError::EmptyZone);
    }
    if end > series.len() {
        return Err(DataError::ZoneOutOfRange {
            start: spec.start,
            end,
            len: series.len(),
        });
    }
    if spec.chunk_count == 0 {
        return Err(DataError::InvalidChunkCount);
    }

    let mut out = series.to_vec();
    let mut mask = vec![false; series.len()];
    for m in &mut mask[spec.start..end] {
        *m = true;
    }

    match spec.level {
        MagnitudeLevel::Zero => {
            for v in &mut out[spec.start..end] {
                *v = 0.0;
            }
        }
        MagnitudeLevel::TwentyFive | MagnitudeLevel::Fifty => {
            let pct = spec.level.percentage() as f64 / 100.0;
            let mut rng = SeededRng::new(spec.seed);
            let base = spec.length / spec.chunk_count;
            let mut offset = spec.start;
            for chunk in 0..spec.chunk_count {
                let size = if chunk + 1 == spec.chunk_count {
                    end - offset
                } else {
                    base
                };
                let sign = if rng.next_f64() < 0.5 { 1.0 } else { -1.0 };
                for v in &mut out[offset..offset + size] {
                    let change = (pct * *v).max(0.1);
                    *v += sign * change;
                }
                offset += size;
            }
        }
    }

    Ok((out, mask))
}
