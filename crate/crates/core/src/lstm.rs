//! Single-layer LSTM with a dense output head, implemented by hand.
//!
//! Each gate operates on the *hidden input* `hin_t = [x_t, h_{t-1}, 1]`, the
//! concatenation of the current input sample, the previous hidden state and a
//! constant bias slot. Recurrent, input and bias parameters therefore live in
//! one matrix per gate, and the backward pass exposes the full gradient of the
//! window loss with respect to `hin_t` — whose leading `input_dim` entries are
//! the per-sample error responsibility used for data correction.
//!
//! Backpropagation through time is truncated at window boundaries: each window
//! of `sample_size` steps is an independent training sample starting from
//! zeroed hidden and cell state.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{
    init_uniform, sigmoid, sigmoid_derivative_from_output, tanh_derivative_from_output, Matrix,
    NumericError, SeededRng,
};

/// Default low end of the uniform weight initialization range.
pub const DEFAULT_INIT_LOW: f64 = -0.1;
/// Default high end of the uniform weight initialization range.
pub const DEFAULT_INIT_HIGH: f64 = 0.1;

#[derive(Debug, Error, PartialEq)]
pub enum LstmError {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("window has {got} values, expected sample_size {expected} x input_dim {input_dim}")]
    WindowLength {
        expected: usize,
        input_dim: usize,
        got: usize,
    },
    #[error("label has {got} values, expected label_size {expected}")]
    LabelLength { expected: usize, got: usize },
    #[error("cache does not match weights: {0}")]
    StaleCache(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Network dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LstmDims {
    /// Values per time step (1 for univariate series).
    pub input_dim: usize,
    /// Hidden units per gate.
    pub hidden_units: usize,
    /// Time steps per training window.
    pub sample_size: usize,
    /// Predicted steps per window.
    pub label_size: usize,
}

impl Default for LstmDims {
    fn default() -> Self {
        LstmDims {
            input_dim: 1,
            hidden_units: 200,
            sample_size: 5,
            label_size: 1,
        }
    }
}

impl LstmDims {
    pub fn validate(&self) -> Result<(), LstmError> {
        if self.input_dim == 0
            || self.hidden_units == 0
            || self.sample_size == 0
            || self.label_size == 0
        {
            return Err(LstmError::InvalidDims(format!(
                "all dimensions must be >= 1, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Length of the concatenated hidden input `[x_t, h_{t-1}, 1]`.
    pub fn hidden_input_len(&self) -> usize {
        self.input_dim + self.hidden_units + 1
    }
}

/// All learnable parameters.
///
/// `wi`, `wf`, `wo`, `wg` are the input, forget, output and candidate gate
/// matrices of shape `hidden_units x hidden_input_len`; `wy` is the dense
/// output head of shape `label_size x hidden_units` (no separate output bias).
#[derive(Debug, Clone, PartialEq)]
pub struct LstmWeights {
    pub wi: Matrix,
    pub wf: Matrix,
    pub wo: Matrix,
    pub wg: Matrix,
    pub wy: Matrix,
}

impl LstmWeights {
    /// Random initialization, uniform in `[DEFAULT_INIT_LOW, DEFAULT_INIT_HIGH)`.
    pub fn init(dims: &LstmDims, rng: &mut SeededRng) -> Result<Self, LstmError> {
        Self::init_with_range(dims, rng, DEFAULT_INIT_LOW, DEFAULT_INIT_HIGH)
    }

    /// Random initialization with an explicit uniform range.
    ///
    /// Matrices are drawn in a fixed order (wi, wf, wo, wg, wy) so a seed
    /// fully determines the result.
    pub fn init_with_range(
        dims: &LstmDims,
        rng: &mut SeededRng,
        low: f64,
        high: f64,
    ) -> Result<Self, LstmError> {
        dims.validate()?;
        let h = dims.hidden_units;
        let z = dims.hidden_input_len();
        Ok(LstmWeights {
            wi: init_uniform(rng, h, z, low, high)?,
            wf: init_uniform(rng, h, z, low, high)?,
            wo: init_uniform(rng, h, z, low, high)?,
            wg: init_uniform(rng, h, z, low, high)?,
            wy: init_uniform(rng, dims.label_size, h, low, high)?,
        })
    }

    /// All-zero parameters with the shapes implied by `dims`.
    pub fn zeros(dims: &LstmDims) -> Result<Self, LstmError> {
        dims.validate()?;
        let h = dims.hidden_units;
        let z = dims.hidden_input_len();
        Ok(LstmWeights {
            wi: Matrix::zeros(h, z),
            wf: Matrix::zeros(h, z),
            wo: Matrix::zeros(h, z),
            wg: Matrix::zeros(h, z),
            wy: Matrix::zeros(dims.label_size, h),
        })
    }

    fn check_shapes(&self, dims: &LstmDims) -> Result<(), LstmError> {
        let h = dims.hidden_units;
        let z = dims.hidden_input_len();
        let gates = [
            ("wi", &self.wi),
            ("wf", &self.wf),
            ("wo", &self.wo),
            ("wg", &self.wg),
        ];
        for (name, m) in gates {
            if m.rows() != h || m.cols() != z {
                return Err(LstmError::InvalidDims(format!(
                    "{name} is {}x{}, expected {h}x{z}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if self.wy.rows() != dims.label_size || self.wy.cols() != h {
            return Err(LstmError::InvalidDims(format!(
                "wy is {}x{}, expected {}x{h}",
                self.wy.rows(),
                self.wy.cols(),
                dims.label_size
            )));
        }
        Ok(())
    }

    /// Returns `self - lr * grads` applied in place.
    pub fn sgd_step(&mut self, grads: &LstmWeights, learning_rate: f64) -> Result<(), LstmError> {
        self.wi.add_scaled(&grads.wi, -learning_rate)?;
        self.wf.add_scaled(&grads.wf, -learning_rate)?;
        self.wo.add_scaled(&grads.wo, -learning_rate)?;
        self.wg.add_scaled(&grads.wg, -learning_rate)?;
        self.wy.add_scaled(&grads.wy, -learning_rate)?;
        Ok(())
    }

    /// Accumulate `scale * other` into every matrix.
    pub fn add_scaled(&mut self, other: &LstmWeights, scale: f64) -> Result<(), LstmError> {
        self.wi.add_scaled(&other.wi, scale)?;
        self.wf.add_scaled(&other.wf, scale)?;
        self.wo.add_scaled(&other.wo, scale)?;
        self.wg.add_scaled(&other.wg, scale)?;
        self.wy.add_scaled(&other.wy, scale)?;
        Ok(())
    }

    /// Multiply every parameter in place.
    pub fn scale(&mut self, factor: f64) {
        self.wi.scale(factor);
        self.wf.scale(factor);
        self.wo.scale(factor);
        self.wg.scale(factor);
        self.wy.scale(factor);
    }

    pub fn is_finite(&self) -> bool {
        self.wi.is_finite()
            && self.wf.is_finite()
            && self.wo.is_finite()
            && self.wg.is_finite()
            && self.wy.is_finite()
    }

    /// FNV-1a hash over the exact bit patterns of all parameters.
    ///
    /// Two weight sets compare equal under this checksum iff they are
    /// bitwise identical, which is how experiment reports prove that every
    /// compared method started from the same initialization.
    pub fn checksum(&self) -> u64 {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |m: &Matrix| {
            for v in m.as_slice() {
                for byte in v.to_bits().to_le_bytes() {
                    hash ^= byte as u64;
                    hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
                }
            }
        };
        feed(&self.wi);
        feed(&self.wf);
        feed(&self.wo);
        feed(&self.wg);
        feed(&self.wy);
        hash
    }
}

/// Per-block activations retained from a forward pass for the backward pass.
#[derive(Debug, Clone)]
pub struct WindowCache {
    /// Hidden inputs, one of length `hidden_input_len` per block.
    pub hin: Vec<Vec<f64>>,
    /// Input gate activations, one of length `hidden_units` per block.
    pub gate_i: Vec<Vec<f64>>,
    /// Forget gate activations.
    pub gate_f: Vec<Vec<f64>>,
    /// Output gate activations.
    pub gate_o: Vec<Vec<f64>>,
    /// Candidate cell values (tanh activated).
    pub candidate: Vec<Vec<f64>>,
    /// Cell states after each block.
    pub cell: Vec<Vec<f64>>,
    /// tanh of each cell state.
    pub cell_tanh: Vec<Vec<f64>>,
    /// Hidden states after each block.
    pub hidden: Vec<Vec<f64>>,
    /// Output of the dense head on the final hidden state.
    pub prediction: Vec<f64>,
}

/// Gradients from one backward pass.
#[derive(Debug, Clone)]
pub struct BackwardResult {
    /// Loss gradients for every weight matrix, shaped like [`LstmWeights`].
    pub weight_grads: LstmWeights,
    /// Per block, the loss gradient with respect to that block's input
    /// sample: the `input_dim`-long leading slice of d(loss)/d(hin_t).
    pub input_grads: Vec<Vec<f64>>,
}

/// Forward pass over one window.
///
/// `window` holds `sample_size` input samples of `input_dim` values each,
/// flattened in time order; for univariate series it is simply a slice of the
/// series. Hidden and cell state start at zero.
pub fn forward_window(
    weights: &LstmWeights,
    window: &[f64],
    dims: &LstmDims,
) -> Result<WindowCache, LstmError> {
    dims.validate()?;
    weights.check_shapes(dims)?;
    if window.len() != dims.sample_size * dims.input_dim {
        return Err(LstmError::WindowLength {
            expected: dims.sample_size,
            input_dim: dims.input_dim,
            got: window.len(),
        });
    }

    let h = dims.hidden_units;
    let z = dims.hidden_input_len();
    let steps = dims.sample_size;

    let mut cache = WindowCache {
        hin: Vec::with_capacity(steps),
        gate_i: Vec::with_capacity(steps),
        gate_f: Vec::with_capacity(steps),
        gate_o: Vec::with_capacity(steps),
        candidate: Vec::with_capacity(steps),
        cell: Vec::with_capacity(steps),
        cell_tanh: Vec::with_capacity(steps),
        hidden: Vec::with_capacity(steps),
        prediction: Vec::new(),
    };

    let mut hidden = vec![0.0; h];
    let mut cell = vec![0.0; h];

    for t in 0..steps {
        let mut hin = Vec::with_capacity(z);
        hin.extend_from_slice(&window[t * dims.input_dim..(t + 1) * dims.input_dim]);
        hin.extend_from_slice(&hidden);
        hin.push(1.0);

        let mut gate_i = weights.wi.matvec(&hin)?;
        let mut gate_f = weights.wf.matvec(&hin)?;
        let mut gate_o = weights.wo.matvec(&hin)?;
        let mut candidate = weights.wg.matvec(&hin)?;
        for v in &mut gate_i {
            *v = sigmoid(*v);
        }
        for v in &mut gate_f {
            *v = sigmoid(*v);
        }
        for v in &mut gate_o {
            *v = sigmoid(*v);
        }
        for v in &mut candidate {
            *v = v.tanh();
        }

        let mut new_cell = vec![0.0; h];
        let mut cell_tanh = vec![0.0; h];
        let mut new_hidden = vec![0.0; h];
        for j in 0..h {
            new_cell[j] = gate_i[j] * candidate[j] + gate_f[j] * cell[j];
            cell_tanh[j] = new_cell[j].tanh();
            new_hidden[j] = gate_o[j] * cell_tanh[j];
        }

        cache.hin.push(hin);
        cache.gate_i.push(gate_i);
        cache.gate_f.push(gate_f);
        cache.gate_o.push(gate_o);
        cache.candidate.push(candidate);
        cache.cell.push(new_cell.clone());
        cache.cell_tanh.push(cell_tanh);
        cache.hidden.push(new_hidden.clone());

        hidden = new_hidden;
        cell = new_cell;
    }

    cache.prediction = weights.wy.matvec(&hidden)?;
    Ok(cache)
}

/// Mean squared error between a prediction and its label.
pub fn loss(prediction: &[f64], label: &[f64]) -> Result<f64, LstmError> {
    if prediction.len() != label.len() || prediction.is_empty() {
        return Err(LstmError::LabelLength {
            expected: prediction.len(),
            got: label.len(),
        });
    }
    let sum: f64 = prediction
        .iter()
        .zip(label)
        .map(|(&p, &y)| (p - y) * (p - y))
        .sum();
    Ok(sum / prediction.len() as f64)
}

/// Backward pass over one window.
///
/// Propagates the MSE gradient backwards through the dense head and through
/// the hidden/cell recurrences of every block, returning the gradient for
/// each weight matrix and, per block, the gradient with respect to the
/// block's input sample.
pub fn backward_window(
    weights: &LstmWeights,
    cache: &WindowCache,
    label: &[f64],
) -> Result<BackwardResult, LstmError> {
    let steps = cache.hin.len();
    if steps == 0 {
        return Err(LstmError::StaleCache("empty cache".into()));
    }
    let h = weights.wi.rows();
    let z = weights.wi.cols();
    let input_dim = z - h - 1;
    if cache.hin[0].len() != z || cache.gate_i[0].len() != h {
        return Err(LstmError::StaleCache(format!(
            "cache built for hin len {} / {} hidden units, weights expect {z} / {h}",
            cache.hin[0].len(),
            cache.gate_i[0].len()
        )));
    }
    let label_size = weights.wy.rows();
    if label.len() != label_size {
        return Err(LstmError::LabelLength {
            expected: label_size,
            got: label.len(),
        });
    }

    let dims = LstmDims {
        input_dim,
        hidden_units: h,
        sample_size: steps,
        label_size,
    };
    let mut grads = LstmWeights::zeros(&LstmDims {
        sample_size: 1,
        ..dims
    })?;

    // d(MSE)/d(prediction).
    let mut d_pred = vec![0.0; label_size];
    for (j, d) in d_pred.iter_mut().enumerate() {
        *d = 2.0 * (cache.prediction[j] - label[j]) / label_size as f64;
    }

    let last_hidden = &cache.hidden[steps - 1];
    grads.wy.add_scaled_outer(&d_pred, last_hidden, 1.0)?;

    // Gradient flowing into h_t from the future (head for t = last,
    // recurrence below for earlier blocks).
    let mut d_hidden = weights.wy.tr_matvec(&d_pred)?;
    let mut d_cell_next = vec![0.0; h];

    let mut input_grads = vec![vec![0.0; input_dim]; steps];

    for t in (0..steps).rev() {
        let gate_i = &cache.gate_i[t];
        let gate_f = &cache.gate_f[t];
        let gate_o = &cache.gate_o[t];
        let candidate = &cache.candidate[t];
        let cell_tanh = &cache.cell_tanh[t];
        let prev_cell: &[f64] = if t == 0 { &[] } else { &cache.cell[t - 1] };

        let mut da_i = vec![0.0; h];
        let mut da_f = vec![0.0; h];
        let mut da_o = vec![0.0; h];
        let mut da_g = vec![0.0; h];
        let mut d_cell = vec![0.0; h];

        for j in 0..h {
            let dh = d_hidden[j];
            let d_o = dh * cell_tanh[j];
            da_o[j] = d_o * sigmoid_derivative_from_output(gate_o[j]);

            let dc = dh * gate_o[j] * tanh_derivative_from_output(cell_tanh[j]) + d_cell_next[j];
            d_cell[j] = dc;

            da_i[j] = dc * candidate[j] * sigmoid_derivative_from_output(gate_i[j]);
            da_g[j] = dc * gate_i[j] * tanh_derivative_from_output(candidate[j]);
            let c_prev = if t == 0 { 0.0 } else { prev_cell[j] };
            da_f[j] = dc * c_prev * sigmoid_derivative_from_output(gate_f[j]);
        }

        let hin = &cache.hin[t];
        grads.wi.add_scaled_outer(&da_i, hin, 1.0)?;
        grads.wf.add_scaled_outer(&da_f, hin, 1.0)?;
        grads.wo.add_scaled_outer(&da_o, hin, 1.0)?;
        grads.wg.add_scaled_outer(&da_g, hin, 1.0)?;

        // d(loss)/d(hin_t): each gate's pre-activation gradient pulled back
        // through its weight matrix.
        let mut d_hin = weights.wi.tr_matvec(&da_i)?;
        for (d, v) in d_hin.iter_mut().zip(weights.wf.tr_matvec(&da_f)?) {
            *d += v;
        }
        for (d, v) in d_hin.iter_mut().zip(weights.wo.tr_matvec(&da_o)?) {
            *d += v;
        }
        for (d, v) in d_hin.iter_mut().zip(weights.wg.tr_matvec(&da_g)?) {
            *d += v;
        }

        input_grads[t].copy_from_slice(&d_hin[..input_dim]);
        d_hidden.copy_from_slice(&d_hin[input_dim..input_dim + h]);
        for j in 0..h {
            d_cell_next[j] = d_cell[j] * gate_f[j];
        }
    }

    Ok(BackwardResult {
        weight_grads: grads,
        input_grads,
    })
}

/// Forward pass returning only the prediction.
pub fn predict(
    weights: &LstmWeights,
    window: &[f64],
    dims: &LstmDims,
) -> Result<Vec<f64>, LstmError> {
    Ok(forward_window(weights, window, dims)?.prediction)
}
