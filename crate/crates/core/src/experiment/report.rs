//! Report structures written by experiment runs.
//!
//! Serialized output is fully determined by the configuration and seeds:
//! per-cell wall times are kept in memory for logging but never written, so
//! rerunning a config reproduces the report files byte for byte.

use serde::{Deserialize, Serialize};

/// Result of one (series, method, seed) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub series_id: String,
    pub method: String,
    pub variant: String,
    pub seed: u64,
    /// Checksum of the initial weights; equal across methods within a
    /// (series, seed) cell by construction.
    pub init_checksum: String,
    pub series_length: usize,
    pub train_len: usize,
    pub test_len: usize,
    /// Min/max fitted on the raw training split; corrected series files are
    /// in normalized units and denormalize through these.
    pub norm_min: Option<f64>,
    pub norm_max: Option<f64>,
    /// Test MSE in normalized units.
    pub mse: Option<f64>,
    /// Test MSE divided by the mean of the (normalized) test targets.
    pub nmse: Option<f64>,
    pub reconstruction_ability: Option<f64>,
    pub outside_loss: Option<f64>,
    /// Distance between the corrected series and the training series it
    /// started from.
    pub corrected_distance: Option<f64>,
    pub final_train_loss: Option<f64>,
    pub total_correction_magnitude: Option<f64>,
    /// Mean window loss per epoch.
    pub loss_trace: Vec<f64>,
    /// Applied correction magnitude per epoch.
    pub correction_magnitude: Vec<f64>,
    /// File the corrected training series was written to, relative to the
    /// output directory.
    pub corrected_series_file: Option<String>,
    pub error: Option<String>,
    #[serde(skip)]
    pub wall_time_secs: f64,
}

impl CellReport {
    pub fn csv_header() -> &'static str {
        "series_id,method,variant,seed,init_checksum,series_length,train_len,test_len,\
         norm_min,norm_max,mse,nmse,reconstruction_ability,outside_loss,corrected_distance,\
         final_train_loss,total_correction_magnitude,corrected_series_file,error"
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let txt = |v: &Option<String>| {
            v.as_deref()
                .map(|s| s.replace(',', ";"))
                .unwrap_or_default()
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.series_id,
            self.method,
            self.variant,
            self.seed,
            self.init_checksum,
            self.series_length,
            self.train_len,
            self.test_len,
            opt(&self.norm_min),
            opt(&self.norm_max),
            opt(&self.mse),
            opt(&self.nmse),
            opt(&self.reconstruction_ability),
            opt(&self.outside_loss),
            opt(&self.corrected_distance),
            opt(&self.final_train_loss),
            opt(&self.total_correction_magnitude),
            txt(&self.corrected_series_file),
            txt(&self.error),
        )
    }
}

/// One row of the per-series gain table: how much a method improved on the
/// standard LSTM baseline with the same seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainRow {
    pub series_id: String,
    pub seed: u64,
    pub method: String,
    pub standard_mse: f64,
    pub method_mse: f64,
    /// `standard_mse - method_mse`; positive when the method won.
    pub gain: f64,
}

impl GainRow {
    pub fn csv_header() -> &'static str {
        "series_id,seed,method,standard_mse,method_mse,gain"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.series_id, self.seed, self.method, self.standard_mse, self.method_mse, self.gain
        )
    }
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub cells: Vec<CellReport>,
    pub gains: Vec<GainRow>,
}

impl ExperimentReport {
    pub fn has_errors(&self) -> bool {
        self.cells.iter().any(|c| c.error.is_some())
    }

    pub fn cells_csv(&self) -> String {
        let mut out = String::from(CellReport::csv_header());
        out.push('\n');
        for cell in &self.cells {
            out.push_str(&cell.to_csv());
            out.push('\n');
        }
        out
    }

    pub fn gains_csv(&self) -> String {
        let mut out = String::from(GainRow::csv_header());
        out.push('\n');
        for gain in &self.gains {
            out.push_str(&gain.to_csv());
            out.push('\n');
        }
        out
    }
}

/// One row of a transfer run: a standard LSTM retrained on a corrected
/// series, compared against the baseline trained on the data as given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferRow {
    pub series_id: String,
    pub seed: u64,
    pub producer_method: String,
    pub baseline_mse: Option<f64>,
    pub transfer_mse: Option<f64>,
    /// `baseline_mse - transfer_mse`; positive when the corrected data
    /// trained a better model.
    pub gain: Option<f64>,
    pub error: Option<String>,
}

impl TransferRow {
    pub fn csv_header() -> &'static str {
        "series_id,seed,producer_method,baseline_mse,transfer_mse,gain,error"
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.series_id,
            self.seed,
            self.producer_method,
            opt(&self.baseline_mse),
            opt(&self.transfer_mse),
            opt(&self.gain),
            self.error
                .as_deref()
                .map(|s| s.replace(',', ";"))
                .unwrap_or_default()
        )
    }
}

/// Transfer run output.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TransferReport {
    pub rows: Vec<TransferRow>,
}

impl TransferReport {
    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TransferRow::csv_header());
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        out
    }
}

/// Per-method aggregate over one or more runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: String,
    pub cells: usize,
    pub errors: usize,
    pub mean_mse: Option<f64>,
    pub mean_nmse: Option<f64>,
    pub mean_reconstruction_ability: Option<f64>,
    pub mean_outside_loss: Option<f64>,
    /// Pearson correlation between series length and test MSE, when at
    /// least two distinct lengths are present.
    pub length_mse_correlation: Option<f64>,
}

impl MethodSummary {
    pub fn csv_header() -> &'static str {
        "method,cells,errors,mean_mse,mean_nmse,mean_reconstruction_ability,mean_outside_loss,length_mse_correlation"
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.method,
            self.cells,
            self.errors,
            opt(&self.mean_mse),
            opt(&self.mean_nmse),
            opt(&self.mean_reconstruction_ability),
            opt(&self.mean_outside_loss),
            opt(&self.length_mse_correlation),
        )
    }
}
