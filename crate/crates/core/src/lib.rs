//! LSTM time series forecasting with data-correcting backpropagation.
//!
//! Besides updating the network weights, the backward pass here assigns part
//! of the error responsibility to the training data: the gradient of the
//! window loss with respect to each input sample, scaled by a data
//! correction rate, becomes a per-time-step correction applied to the series
//! itself. Training therefore returns both a trained network and a corrected
//! version of its training data — useful when the data contains disruptions
//! (stockouts, sensor dropouts, injected anomalies) that would otherwise
//! mislead the model.
//!
//! The crate is organised as:
//!
//! * [`numeric`] — dense matrices, activations and a fixed, portable seeded
//!   RNG; no external numeric dependencies.
//! * [`lstm`] — single-layer LSTM over a concatenated hidden input with a
//!   dense head, manual forward/backward within sliding windows, SGD, and
//!   extraction of per-input-sample loss gradients.
//! * [`engine`] — the correction variants (standard, epoch-wise,
//!   instance-wise, selective) built on top of those gradients.
//! * [`data`] — CSV loading, min/max normalization, train/test splitting,
//!   window planning and artificial anomaly injection.
//! * [`eval`] — MSE / normalized MSE / Pearson correlation plus
//!   reconstruction-ability and outside-loss similarity metrics.
//! * [`experiment`] — reproducible experiment sweeps: shared initial weights
//!   per (series, seed) cell, parallel cells, deterministic reports,
//!   corrected-series export, anomaly injection runs, transfer retraining
//!   and report aggregation.

pub mod data;
pub mod engine;
pub mod eval;
pub mod experiment;
pub mod lstm;
pub mod numeric;

pub use engine::{PastpropConfig, TrainingOutcome, Variant};
pub use experiment::{ExperimentConfig, ExperimentReport};
pub use lstm::{LstmDims, LstmWeights};
pub use numeric::SeededRng;
