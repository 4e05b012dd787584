//! Shared helpers for the integration suites: finite-difference gradient
//! oracles and synthetic series generators.
//!
//! The oracle evaluates the window loss through the public forward pass only,
//! so it stays independent of the backward pass it is checking.

#![allow(dead_code)]

use pastprop::lstm::{forward_window, loss, LstmDims, LstmWeights};
use pastprop::numeric::SeededRng;

/// Window loss computed from scratch (forward pass + MSE only).
pub fn loss_of(weights: &LstmWeights, window: &[f64], label: &[f64], dims: &LstmDims) -> f64 {
    let cache = forward_window(weights, window, dims).expect("forward");
    loss(&cache.prediction, label).expect("loss")
}

/// Central finite difference of the loss with respect to one weight entry.
pub fn fd_weight_grad(
    weights: &LstmWeights,
    matrix: usize,
    flat_index: usize,
    window: &[f64],
    label: &[f64],
    dims: &LstmDims,
    step: f64,
) -> f64 {
    let mut plus = weights.clone();
    let mut minus = weights.clone();
    {
        let m = matrix_mut(&mut plus, matrix);
        m[flat_index] += step;
    }
    {
        let m = matrix_mut(&mut minus, matrix);
        m[flat_index] -= step;
    }
    (loss_of(&plus, window, label, dims) - loss_of(&minus, window, label, dims)) / (2.0 * step)
}

/// Central finite difference of the loss with respect to one input value.
pub fn fd_input_grad(
    weights: &LstmWeights,
    window: &[f64],
    value_index: usize,
    label: &[f64],
    dims: &LstmDims,
    step: f64,
) -> f64 {
    let mut plus = window.to_vec();
    let mut minus = window.to_vec();
    plus[value_index] += step;
    minus[value_index] -= step;
    (loss_of(weights, &plus, label, dims) - loss_of(weights, &minus, label, dims)) / (2.0 * step)
}

pub const MATRIX_NAMES: [&str; 5] = ["wi", "wf", "wo", "wg", "wy"];

pub fn matrix_mut(weights: &mut LstmWeights, index: usize) -> &mut [f64] {
    match index {
        0 => weights.wi.as_mut_slice(),
        1 => weights.wf.as_mut_slice(),
        2 => weights.wo.as_mut_slice(),
        3 => weights.wg.as_mut_slice(),
        4 => weights.wy.as_mut_slice(),
        _ => panic!("no matrix {index}"),
    }
}

pub fn matrix_ref(weights: &LstmWeights, index: usize) -> &[f64] {
    match index {
        0 => weights.wi.as_slice(),
        1 => weights.wf.as_slice(),
        2 => weights.wo.as_slice(),
        3 => weights.wg.as_slice(),
        4 => weights.wy.as_slice(),
        _ => panic!("no matrix {index}"),
    }
}

/// True when `analytic` and `numeric` agree within `rel` relative error,
/// with an absolute floor for near-zero gradients.
pub fn grads_agree(analytic: f64, numeric: f64, rel: f64, abs_floor: f64) -> bool {
    (analytic - numeric).abs() <= abs_floor.max(rel * analytic.abs().max(numeric.abs()))
}

/// Random window and label with values in [0, 1).
pub fn random_sample(rng: &mut SeededRng, dims: &LstmDims) -> (Vec<f64>, Vec<f64>) {
    let window: Vec<f64> = (0..dims.sample_size * dims.input_dim)
        .map(|_| rng.next_f64())
        .collect();
    let label: Vec<f64> = (0..dims.label_size).map(|_| rng.next_f64()).collect();
    (window, label)
}

/// Seasonal series with daily and weekly components plus a mild trend and
/// noise, in original units.
pub fn seasonal_series(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = SeededRng::new(seed);
    (0..len)
        .map(|t| {
            let t = t as f64;
            10.0 + 4.0 * (t * std::f64::consts::TAU / 24.0).sin()
                + 1.5 * (t * std::f64::consts::TAU / 168.0).cos()
                + 0.01 * t
                + 0.2 * (rng.next_f64() - 0.5)
        })
        .collect()
}

/// Single-period seasonal series with light noise, in original units.
pub fn daily_seasonal(len: usize, noise: f64, seed: u64) -> Vec<f64> {
    let mut rng = SeededRng::new(seed);
    (0..len)
        .map(|t| {
            let t = t as f64;
            10.0 + 4.0 * (t * std::f64::consts::TAU / 24.0).sin()
                + noise * (rng.next_f64() - 0.5)
        })
        .collect()
}
