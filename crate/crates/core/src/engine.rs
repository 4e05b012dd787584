//! Training variants that assign part of the prediction error to the
//! training data itself.
//!
//! Alongside the usual weight updates, each backward pass yields the loss
//! gradient with respect to every input sample in the window. Scaled by the
//! *data correction rate*, these become per-time-step deltas that move the
//! training series in the direction that reduces the error:
//!
//! * **Standard** ignores the deltas (plain LSTM training).
//! * **Epoch-wise** collects deltas over an epoch, averages overlapping
//!   contributions per time step, and applies them all at once between
//!   epochs, so the first epoch trains on untouched data.
//! * **Instance-wise** applies each window's deltas immediately after its
//!   backward pass (divided by the number of windows covering each step to
//!   compensate for overlap), so later windows in the same epoch already see
//!   corrected values.
//! * **Selective** is epoch-wise plus an embargo of `epoch_embargo` initial
//!   epochs with no corrections, and a ranking filter that keeps only large,
//!   neighborhood-supported deltas.
//!
//! All variants run the same window order and the same weight arithmetic, so
//! with a zero correction rate each one reproduces Standard bit for bit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lstm::{
    backward_window, forward_window, loss, LstmDims, LstmError, LstmWeights,
};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("training series has {len} points, need more than sample_size + label_size = {min}")]
    SeriesTooShort { len: usize, min: usize },
    #[error("window starting at {start} with {sample_size} steps exceeds series length {len}")]
    WindowOutOfRange {
        start: usize,
        sample_size: usize,
        len: usize,
    },
    #[error("data correction requires univariate input, got input_dim {input_dim}")]
    UnivariateOnly { input_dim: usize },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("weights became non-finite during epoch {epoch}")]
    Diverged { epoch: usize },
    #[error(transparent)]
    Lstm(#[from] LstmError),
}

/// Which training variant to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Standard,
    EpochWise,
    InstanceWise,
    Selective,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Variant::Standard => "standard",
            Variant::EpochWise => "epoch-wise",
            Variant::InstanceWise => "instance-wise",
            Variant::Selective => "selective",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "standard" | "lstm" => Ok(Variant::Standard),
            "epoch-wise" | "epochwise" => Ok(Variant::EpochWise),
            "instance-wise" | "instancewise" => Ok(Variant::InstanceWise),
            "selective" => Ok(Variant::Selective),
            other => Err(format!(
                "unknown variant '{other}' (expected standard, epoch-wise, instance-wise or selective)"
            )),
        }
    }
}

/// How many ranked corrections the selective variant keeps per epoch.
///
/// Serialized as a compact string: `"all"`, an integer count like `"25"`,
/// or a fraction of the training length written as `"0.1"` or `"10%"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TopK {
    /// Keep every correction that clears the threshold.
    All,
    /// Keep at most this many.
    Count(usize),
    /// Keep at most `fraction * training length`, with a floor of one.
    Fraction(f64),
}

impl TopK {
    /// Resolve against a concrete series length.
    pub fn resolve(&self, series_len: usize) -> usize {
        match *self {
            TopK::All => usize::MAX,
            TopK::Count(n) => n,
            TopK::Fraction(f) => ((f * series_len as f64).floor() as usize).max(1),
        }
    }
}

impl Default for TopK {
    fn default() -> Self {
        TopK::Fraction(0.1)
    }
}

impl std::fmt::Display for TopK {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            TopK::All => f.write_str("all"),
            TopK::Count(n) => write!(f, "{n}"),
            TopK::Fraction(frac) => {
                let s = frac.to_string();
                // Keep a decimal point so the value reads back as a fraction.
                if s.contains('.') || s.contains('e') {
                    f.write_str(&s)
                } else {
                    write!(f, "{s}.0")
                }
            }
        }
    }
}

impl std::str::FromStr for TopK {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(TopK::All);
        }
        if let Some(pct) = s.strip_suffix('%') {
            let p: f64 = pct
                .trim()
                .parse()
                .map_err(|_| format!("invalid top_k percentage '{s}'"))?;
            return Ok(TopK::Fraction(p / 100.0));
        }
        if let Ok(n) = s.parse::<usize>() {
            return Ok(TopK::Count(n));
        }
        if let Ok(f) = s.parse::<f64>() {
            return Ok(TopK::Fraction(f));
        }
        Err(format!(
            "invalid top_k '{s}' (expected 'all', a count, a fraction or a percentage)"
        ))
    }
}

impl Serialize for TopK {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TopK {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Full training configuration for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PastpropConfig {
    pub variant: Variant,
    /// Learning rate applied to the data instead of the weights.
    pub correction_rate: f64,
    /// Minimum ranking score a delta must exceed to be applied (selective).
    pub correction_threshold: f64,
    /// Radius of neighboring deltas included in the ranking score (selective).
    pub neighborhood_size: usize,
    /// Epochs to run before any correction is applied (selective).
    pub epoch_embargo: usize,
    /// Cap on the number of ranked deltas kept per epoch (selective).
    pub top_k: TopK,
    pub epochs: usize,
    pub learning_rate: f64,
    /// Windows per weight update; gradients are averaged across the batch.
    pub batch_size: usize,
    /// Clamp corrected values back into [0, 1]. Off by default: the
    /// correction rule itself places no bounds on corrected data.
    pub clamp_to_unit: bool,
}

impl Default for PastpropConfig {
    fn default() -> Self {
        PastpropConfig {
            variant: Variant::Standard,
            correction_rate: 1.0,
            correction_threshold: 0.0,
            neighborhood_size: 0,
            epoch_embargo: 0,
            top_k: TopK::default(),
            epochs: 50,
            learning_rate: 0.001,
            batch_size: 1,
            clamp_to_unit: false,
        }
    }
}

impl PastpropConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.correction_rate < 0.0 || !self.correction_rate.is_finite() {
            return Err(EngineError::InvalidConfig(format!(
                "correction_rate must be a finite value >= 0, got {}",
                self.correction_rate
            )));
        }
        if self.correction_threshold < 0.0 || self.correction_threshold.is_nan() {
            return Err(EngineError::InvalidConfig(format!(
                "correction_threshold must be >= 0, got {}",
                self.correction_threshold
            )));
        }
        if self.epochs == 0 {
            return Err(EngineError::InvalidConfig("epochs must be >= 1".into()));
        }
        if !self.learning_rate.is_finite() {
            return Err(EngineError::InvalidConfig("learning_rate must be finite".into()));
        }
        if self.batch_size == 0 {
            return Err(EngineError::InvalidConfig("batch_size must be >= 1".into()));
        }
        if let TopK::Fraction(f) = self.top_k {
            if !(0.0..=1.0).contains(&f) {
                return Err(EngineError::InvalidConfig(format!(
                    "top_k fraction must lie in [0, 1], got {f}"
                )));
            }
        }
        Ok(())
    }
}

/// Per-time-step delta accumulator with overlap counts.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionBuffer {
    sums: Vec<f64>,
    counts: Vec<u32>,
}

impl CorrectionBuffer {
    pub fn new(series_len: usize) -> Self {
        CorrectionBuffer {
            sums: vec![0.0; series_len],
            counts: vec![0; series_len],
        }
    }

    /// Add one window's deltas: `sums[start+k] += -rate * grads[k]`.
    ///
    /// The sign is negative because corrections perform gradient descent on
    /// the data. Counts increase even when the rate is zero so overlap
    /// bookkeeping stays exact.
    pub fn accumulate(
        &mut self,
        window_start: usize,
        input_grads: &[f64],
        correction_rate: f64,
    ) -> Result<(), EngineError> {
        let end = window_start + input_grads.len();
        if end > self.sums.len() {
            return Err(EngineError::WindowOutOfRange {
                start: window_start,
                sample_size: input_grads.len(),
                len: self.sums.len(),
            });
        }
        for (k, &g) in input_grads.iter().enumerate() {
            self.sums[window_start + k] += -correction_rate * g;
            self.counts[window_start + k] += 1;
        }
        Ok(())
    }

    /// Average the accumulated deltas: `sums[t] / counts[t]`, zero where no
    /// window contributed. Averaging (rather than summing) keeps the
    /// correction magnitude independent of how many windows overlap a step.
    pub fn finalize(&self) -> Vec<f64> {
        self.sums
            .iter()
            .zip(&self.counts)
            .map(|(&s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
            .collect()
    }

    pub fn reset(&mut self) {
        self.sums.iter_mut().for_each(|s| *s = 0.0);
        self.counts.iter_mut().for_each(|c| *c = 0);
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn sums(&self) -> &[f64] {
        &self.sums
    }
}

/// Rank corrections and zero out all but the strongest.
///
/// Each position scores `|corrections[t]|` plus the mean absolute correction
/// over the `[t - neighborhood, t + neighborhood]` window (clipped at the
/// series edges), so deltas inside a disturbed zone outrank isolated ones of
/// equal size. Positions scoring at most `threshold` are dropped, the rest
/// are ranked by score, and only the `top_k` best survive (`usize::MAX`
/// keeps them all).
pub fn select_corrections(
    corrections: &[f64],
    threshold: f64,
    neighborhood: usize,
    top_k: usize,
) -> Vec<f64> {
    let n = corrections.len();
    let mut scored: Vec<(usize, f64)> = Vec::with_capacity(n);
    for t in 0..n {
        let lo = t.saturating_sub(neighborhood);
        let hi = (t + neighborhood).min(n.saturating_sub(1));
        let mut acc = 0.0;
        for c in &corrections[lo..=hi] {
            acc += c.abs();
        }
        let score = corrections[t].abs() + acc / (hi - lo + 1) as f64;
        if score > threshold {
            scored.push((t, score));
        }
    }
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));

    let mut out = vec![0.0; n];
    for &(t, _) in scored.iter().take(top_k) {
        out[t] = corrections[t];
    }
    out
}

/// Result of one training run.
#[derive(Debug, Clone)]
pub struct TrainingOutcome {
    pub weights: LstmWeights,
    /// The training series after all corrections (equals the input series
    /// for the standard variant or a zero correction rate).
    pub corrected_series: Vec<f64>,
    /// Mean window loss per epoch, one entry per epoch.
    pub loss_trace: Vec<f64>,
    /// Sum of absolute applied corrections per epoch.
    pub correction_magnitude: Vec<f64>,
}

/// Observer callback state passed after every epoch.
pub struct EpochSnapshot<'a> {
    /// 1-based epoch that just finished (corrections already applied).
    pub epoch: usize,
    pub series: &'a [f64],
    pub weights: &'a LstmWeights,
}

/// Number of training windows for a series of `len` points.
fn window_count(len: usize, dims: &LstmDims) -> usize {
    len - dims.sample_size - dims.label_size + 1
}

/// How many training windows cover index `t` as an input position.
fn coverage(t: usize, n_windows: usize, sample_size: usize) -> u32 {
    let lo = t.saturating_sub(sample_size - 1);
    let hi = t.min(n_windows - 1);
    if lo > hi {
        0
    } else {
        (hi - lo + 1) as u32
    }
}

/// Train with the variant selected in `config`.
pub fn train(
    series: &[f64],
    dims: &LstmDims,
    config: &PastpropConfig,
    initial_weights: LstmWeights,
) -> Result<TrainingOutcome, EngineError> {
    train_observed(series, dims, config, initial_weights, |_| {})
}

/// Train, invoking `observer` with the series and weights after each epoch.
pub fn train_observed(
    series: &[f64],
    dims: &LstmDims,
    config: &PastpropConfig,
    initial_weights: LstmWeights,
    mut observer: impl FnMut(EpochSnapshot<'_>),
) -> Result<TrainingOutcome, EngineError> {
    config.validate()?;
    dims.validate()?;
    if dims.input_dim != 1 {
        return Err(EngineError::UnivariateOnly {
            input_dim: dims.input_dim,
        });
    }
    let min = dims.sample_size + dims.label_size;
    if series.len() <= min {
        return Err(EngineError::SeriesTooShort {
            len: series.len(),
            min,
        });
    }

    let mut series = series.to_vec();
    let mut weights = initial_weights;
    let n_windows = window_count(series.len(), dims);
    let sample = dims.sample_size;
    let label = dims.label_size;

    let needs_buffer = matches!(config.variant, Variant::EpochWise | Variant::Selective);
    let mut buffer = CorrectionBuffer::new(series.len());
    // Overlap compensation for instance-wise application, known a priori
    // from the window plan.
    let instance_coverage: Vec<u32> = if config.variant == Variant::InstanceWise {
        (0..series.len())
            .map(|t| coverage(t, n_windows, sample))
            .collect()
    } else {
        Vec::new()
    };
    let top_k = config.top_k.resolve(series.len());

    let mut loss_trace = Vec::with_capacity(config.epochs);
    let mut correction_magnitude = Vec::with_capacity(config.epochs);

    let mut grad_sum = LstmWeights::zeros(&LstmDims {
        sample_size: 1,
        ..*dims
    })?;

    for epoch in 1..=config.epochs {
        let mut epoch_loss = 0.0;
        let mut applied = 0.0;
        if needs_buffer {
            buffer.reset();
        }

        let mut batch_fill = 0usize;
        for start in 0..n_windows {
            let window = &series[start..start + sample];
            let cache = forward_window(&weights, window, dims)?;
            epoch_loss += loss(&cache.prediction, &series[start + sample..start + sample + label])?;
            let bw = backward_window(
                &weights,
                &cache,
                &series[start + sample..start + sample + label],
            )?;

            grad_sum.add_scaled(&bw.weight_grads, 1.0)?;
            batch_fill += 1;
            let batch_done = batch_fill == config.batch_size || start + 1 == n_windows;

            match config.variant {
                Variant::Standard => {}
                Variant::EpochWise | Variant::Selective => {
                    // Univariate: each per-step gradient is a single value.
                    let grads: Vec<f64> = bw.input_grads.iter().map(|g| g[0]).collect();
                    buffer.accumulate(start, &grads, config.correction_rate)?;
                }
                Variant::InstanceWise => {
                    for (k, g) in bw.input_grads.iter().enumerate() {
                        let t = start + k;
                        let delta = -config.correction_rate * g[0] / instance_coverage[t] as f64;
                        series[t] += delta;
                        if config.clamp_to_unit {
                            series[t] = series[t].clamp(0.0, 1.0);
                        }
                        applied += delta.abs();
                    }
                }
            }

            if batch_done {
                if batch_fill > 1 {
                    grad_sum.scale(1.0 / batch_fill as f64);
                }
                weights.sgd_step(&grad_sum, config.learning_rate)?;
                grad_sum.scale(0.0);
                batch_fill = 0;
            }
        }

        loss_trace.push(epoch_loss / n_windows as f64);

        match config.variant {
            Variant::EpochWise => {
                let corrections = buffer.finalize();
                applied = apply_corrections(&mut series, &corrections, config.clamp_to_unit);
            }
            Variant::Selective if epoch > config.epoch_embargo => {
                let corrections = select_corrections(
                    &buffer.finalize(),
                    config.correction_threshold,
                    config.neighborhood_size,
                    top_k,
                );
                applied = apply_corrections(&mut series, &corrections, config.clamp_to_unit);
            }
            _ => {}
        }
        correction_magnitude.push(applied);

        if !weights.is_finite() {
            return Err(EngineError::Diverged { epoch });
        }
        observer(EpochSnapshot {
            epoch,
            series: &series,
            weights: &weights,
        });
    }

    Ok(TrainingOutcome {
        weights,
        corrected_series: series,
        loss_trace,
        correction_magnitude,
    })
}

fn apply_corrections(series: &mut [f64], corrections: &[f64], clamp: bool) -> f64 {
    let mut magnitude = 0.0;
    for (v, &c) in series.iter_mut().zip(corrections) {
        *v += c;
        if clamp {
            *v = v.clamp(0.0, 1.0);
        }
        magnitude += c.abs();
    }
    magnitude
}
