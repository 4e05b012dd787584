//! Minimal dense linear algebra, activation functions and seeded random
//! number generation.
//!
//! Everything here is plain `f64` with no external numeric dependencies, so
//! results are reproducible bit-for-bit for a given seed. Operations that can
//! produce non-finite values (matrix products) check their outputs and return
//! [`NumericError::NonFinite`] instead of letting a NaN escape silently.

use thiserror::Error;

/// Errors produced by the numeric kernel.
#[derive(Debug, Error, PartialEq)]
pub enum NumericError {
    #[error("{op}: dimension mismatch, left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("{op}: produced a non-finite value")]
    NonFinite { op: &'static str },
    #[error("invalid uniform range: low {low} must be strictly below high {high}")]
    InvalidRange { low: f64, high: f64 },
}

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Build from nested rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, NumericError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(NumericError::DimensionMismatch {
                    op: "from_rows",
                    left_rows: nrows,
                    left_cols: ncols,
                    right_rows: 1,
                    right_cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major backing slice.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Standard matrix product `self * other`.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, NumericError> {
        if self.cols != other.rows {
            return Err(NumericError::DimensionMismatch {
                op: "matmul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let o_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in a_row.iter().enumerate() {
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in o_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        ensure_finite(&out.data, "matmul")?;
        Ok(out)
    }

    /// Matrix-vector product `self * x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>, NumericError> {
        if self.cols != x.len() {
            return Err(NumericError::DimensionMismatch {
                op: "matvec",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: x.len(),
                right_cols: 1,
            });
        }
        let mut out = vec![0.0; self.rows];
        for (o, r) in out.iter_mut().zip(0..self.rows) {
            let mut acc = 0.0;
            for (&w, &v) in self.row(r).iter().zip(x) {
                acc += w * v;
            }
            *o = acc;
        }
        ensure_finite(&out, "matvec")?;
        Ok(out)
    }

    /// Transposed matrix-vector product `self^T * x` without materializing
    /// the transpose.
    pub fn tr_matvec(&self, x: &[f64]) -> Result<Vec<f64>, NumericError> {
        if self.rows != x.len() {
            return Err(NumericError::DimensionMismatch {
                op: "tr_matvec",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: x.len(),
                right_cols: 1,
            });
        }
        let mut out = vec![0.0; self.cols];
        for (r, &xr) in x.iter().enumerate() {
            for (o, &w) in out.iter_mut().zip(self.row(r)) {
                *o += xr * w;
            }
        }
        ensure_finite(&out, "tr_matvec")?;
        Ok(out)
    }

    /// Accumulate a scaled outer product: `self += scale * u * v^T`.
    pub fn add_scaled_outer(
        &mut self,
        u: &[f64],
        v: &[f64],
        scale: f64,
    ) -> Result<(), NumericError> {
        if self.rows != u.len() || self.cols != v.len() {
            return Err(NumericError::DimensionMismatch {
                op: "add_scaled_outer",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: u.len(),
                right_cols: v.len(),
            });
        }
        for (r, &ur) in u.iter().enumerate() {
            let s = scale * ur;
            let row = &mut self.data[r * self.cols..(r + 1) * self.cols];
            for (w, &vc) in row.iter_mut().zip(v) {
                *w += s * vc;
            }
        }
        Ok(())
    }

    /// Accumulate a scaled matrix: `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Matrix, scale: f64) -> Result<(), NumericError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(NumericError::DimensionMismatch {
                op: "add_scaled",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        for (w, &g) in self.data.iter_mut().zip(&other.data) {
            *w += scale * g;
        }
        Ok(())
    }

    /// Multiply every entry in place.
    pub fn scale(&mut self, factor: f64) {
        for w in &mut self.data {
            *w *= factor;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

fn ensure_finite(values: &[f64], op: &'static str) -> Result<(), NumericError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(NumericError::NonFinite { op })
    }
}

/// Logistic sigmoid. Saturates cleanly to 0 / 1 for large |x|.
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Derivative of the sigmoid expressed in terms of its output `y = sigmoid(x)`.
pub fn sigmoid_derivative_from_output(y: f64) -> f64 {
    y * (1.0 - y)
}

/// Derivative of tanh expressed in terms of its output `y = tanh(x)`.
pub fn tanh_derivative_from_output(y: f64) -> f64 {
    1.0 - y * y
}

/// Elementwise sigmoid.
pub fn sigmoid_vec(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| sigmoid(x)).collect()
}

/// Elementwise tanh.
pub fn tanh_vec(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| x.tanh()).collect()
}

const SPLITMIX64_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(SPLITMIX64_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random number generator (xoshiro256++ seeded via splitmix64).
///
/// The algorithm is fixed so that a seed produces the same draw sequence on
/// every platform and in every build. Experiment code must route all
/// randomness through this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededRng {
    state: [u64; 4],
    seed: u64,
}

impl SeededRng {
    /// New generator from a 64-bit seed.
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let state = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        SeededRng { state, seed }
    }

    /// New generator for a named substream of `seed`.
    ///
    /// Used to give each (series, seed) experiment cell its own independent
    /// stream without draws in one cell shifting another.
    pub fn derive(seed: u64, stream: u64) -> Self {
        let mut sm = seed;
        let base = splitmix64(&mut sm);
        SeededRng::new(base ^ stream.wrapping_mul(SPLITMIX64_GAMMA))
    }

    /// Seed this generator was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Split off an independent generator, advancing this one.
    pub fn fork(&mut self) -> SeededRng {
        SeededRng::new(self.next_u64())
    }

    /// Next raw 64-bit value (xoshiro256++).
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[low, high)`.
    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.next_f64()
    }
}

/// Matrix with i.i.d. uniform entries in `[low, high)`, drawn in row-major
/// order so the layout is reproducible per seed.
pub fn init_uniform(
    rng: &mut SeededRng,
    rows: usize,
    cols: usize,
    low: f64,
    high: f64,
) -> Result<Matrix, NumericError> {
    if low >= high || low.is_nan() || high.is_nan() {
        return Err(NumericError::InvalidRange { low, high });
    }
    let mut m = Matrix::zeros(rows, cols);
    for v in m.as_mut_slice() {
        *v = rng.uniform(low, high);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
    }

    #[test]
    fn matmul_identity() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let id = Matrix::identity(2);
        assert_eq!(id.matmul(&m).unwrap(), m);
        assert_eq!(m.matmul(&id).unwrap(), m);
    }

    #[test]
    fn matmul_annihilator() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let z = Matrix::zeros(2, 2);
        assert_eq!(z.matmul(&m).unwrap(), z);
    }

    #[test]
    fn matmul_hand_checked() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = Matrix::from_rows(&[vec![5.0, 6.0], vec![7.0, 8.0]]).unwrap();
        let c = a.matmul(&b).unwrap();
        assert_eq!(c.as_slice(), &[19.0, 22.0, 43.0, 50.0]);
    }

    #[test]
    fn matmul_dimension_mismatch_names_shapes() {
        let a = Matrix::zeros(2, 3);
        let b = Matrix::zeros(2, 2);
        let err = a.matmul(&b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("2x3") && msg.contains("2x2"), "{msg}");
    }

    #[test]
    fn matmul_associative_on_random_triples() {
        let mut rng = SeededRng::new(7);
        for _ in 0..20 {
            let a = init_uniform(&mut rng, 4, 3, -1.0, 1.0).unwrap();
            let b = init_uniform(&mut rng, 3, 5, -1.0, 1.0).unwrap();
            let c = init_uniform(&mut rng, 5, 2, -1.0, 1.0).unwrap();
            let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
            let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
            for (&l, &r) in left.as_slice().iter().zip(right.as_slice()) {
                assert!(rel_err(l, r) < 1e-9, "{l} vs {r}");
            }
        }
    }

    #[test]
    fn tr_matvec_matches_explicit_transpose() {
        let mut rng = SeededRng::new(11);
        let a = init_uniform(&mut rng, 4, 6, -1.0, 1.0).unwrap();
        let x: Vec<f64> = (0..4).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let got = a.tr_matvec(&x).unwrap();
        for (c, &g) in got.iter().enumerate() {
            let want: f64 = (0..4).map(|r| a.get(r, c) * x[r]).sum();
            assert!((g - want).abs() < 1e-12);
        }
    }

    #[test]
    fn matvec_rejects_non_finite_output() {
        let a = Matrix::from_rows(&[vec![f64::MAX, f64::MAX]]).unwrap();
        let err = a.matvec(&[2.0, 2.0]).unwrap_err();
        assert_eq!(err, NumericError::NonFinite { op: "matvec" });
    }

    #[test]
    fn sigmoid_midpoint_and_tanh_origin() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert_eq!(0.0_f64.tanh(), 0.0);
    }

    #[test]
    fn sigmoid_high_precision_value() {
        // 1 / (1 + e^-1), evaluated independently to 16 digits.
        assert!((sigmoid(1.0) - 0.731_058_578_630_004_9).abs() < 1e-15);
    }

    #[test]
    fn sigmoid_symmetry() {
        let mut x = -20.0;
        while x <= 20.0 {
            assert!((sigmoid(x) + sigmoid(-x) - 1.0).abs() < 1e-12, "x={x}");
            x += 0.37;
        }
    }

    #[test]
    fn activation_derivatives_match_finite_differences() {
        let h = 1e-6;
        let mut x = -4.0;
        while x <= 4.0 {
            let fd_sig = (sigmoid(x + h) - sigmoid(x - h)) / (2.0 * h);
            let an_sig = sigmoid_derivative_from_output(sigmoid(x));
            assert!(rel_err(fd_sig, an_sig) < 1e-6, "sigmoid' at {x}");

            let fd_tanh = (((x + h).tanh()) - ((x - h).tanh())) / (2.0 * h);
            let an_tanh = tanh_derivative_from_output(x.tanh());
            assert!(rel_err(fd_tanh, an_tanh) < 1e-6, "tanh' at {x}");
            x += 0.31;
        }
    }

    #[test]
    fn sigmoid_saturates_without_error() {
        assert_eq!(sigmoid(1e4), 1.0);
        assert_eq!(sigmoid(-1e4), 0.0);
        assert!(sigmoid(1e4).is_finite());
    }

    #[test]
    fn seeded_rng_is_reproducible() {
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn init_uniform_same_seed_bitwise_identical() {
        let m1 = init_uniform(&mut SeededRng::new(9), 5, 7, -0.1, 0.1).unwrap();
        let m2 = init_uniform(&mut SeededRng::new(9), 5, 7, -0.1, 0.1).unwrap();
        assert_eq!(m1, m2);
    }

    #[test]
    fn init_uniform_respects_range() {
        let low = 0.5;
        let high = 0.5 + 1e-9;
        let m = init_uniform(&mut SeededRng::new(3), 10, 10, low, high).unwrap();
        assert!(m.as_slice().iter().all(|&v| (low..high).contains(&v)));
    }

    #[test]
    fn init_uniform_rejects_bad_range() {
        let err = init_uniform(&mut SeededRng::new(3), 2, 2, 0.1, 0.1).unwrap_err();
        assert_eq!(
            err,
            NumericError::InvalidRange {
                low: 0.1,
                high: 0.1
            }
        );
    }

    #[test]
    fn init_uniform_sample_mean_near_zero() {
        let m = init_uniform(&mut SeededRng::new(42), 1000, 1, -0.1, 0.1).unwrap();
        let mean: f64 = m.as_slice().iter().sum::<f64>() / 1000.0;
        assert!(mean.abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn fork_produces_independent_stream() {
        let mut a = SeededRng::new(5);
        let mut forked = a.fork();
        let next_parent = a.next_u64();
        let next_child = forked.next_u64();
        assert_ne!(next_parent, next_child);

        // Forking is itself deterministic.
        let mut b = SeededRng::new(5);
        let mut forked_b = b.fork();
        assert_eq!(forked_b.next_u64(), next_child);
    }

    #[test]
    fn derive_streams_differ_by_stream_id() {
        let mut a = SeededRng::derive(1, 0);
        let mut b = SeededRng::derive(1, 1);
        assert_ne!(a.next_u64(), b.next_u64());
    }
}
