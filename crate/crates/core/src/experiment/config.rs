//! Declarative experiment configuration.
//!
//! A single TOML file describes inputs, dimensions, the methods to compare,
//! seeds and the optional anomaly to inject. Every run writes its resolved
//! configuration next to its outputs so results stay reproducible.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::data::{AnomalySpec, CsvLayout, SplitSpec};
use crate::engine::PastpropConfig;
use crate::eval::DistanceMetric;
use crate::lstm::LstmDims;

use super::ExperimentError;

/// How test predictions are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForecastMode {
    /// Slide the input window over the observed test values, predicting one
    /// label block at a time.
    #[default]
    OneStepRolling,
    /// Feed predictions back as inputs and never read observed test values.
    Recursive,
}

impl std::str::FromStr for ForecastMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "one-step-rolling" | "rolling" => Ok(ForecastMode::OneStepRolling),
            "recursive" => Ok(ForecastMode::Recursive),
            other => Err(format!(
                "unknown forecast mode '{other}' (expected one-step-rolling or recursive)"
            )),
        }
    }
}

/// One method in the comparison: a display name plus its training config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodConfig {
    #[serde(default)]
    pub name: String,
    #[serde(flatten)]
    pub pastprop: PastpropConfig,
}

impl MethodConfig {
    pub fn new(pastprop: PastpropConfig) -> Self {
        MethodConfig {
            name: pastprop.variant.to_string(),
            pastprop,
        }
    }

    /// Name to report under; falls back to the variant name.
    pub fn display_name(&self) -> String {
        if self.name.is_empty() {
            self.pastprop.variant.to_string()
        } else {
            self.name.clone()
        }
    }
}

/// Complete description of one experiment sweep.
///
/// Field order keeps plain values ahead of tables so the resolved config
/// serializes cleanly to TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    /// Training input files.
    pub inputs: Vec<PathBuf>,
    /// Optional test files (used verbatim instead of splitting); series are
    /// matched to training series by id.
    pub test_inputs: Vec<PathBuf>,
    pub layout: CsvLayout,
    /// Leading fraction of each series used for training when no test file
    /// is given.
    pub train_fraction: f64,
    pub seeds: Vec<u64>,
    pub output_dir: PathBuf,
    /// Uniform weight initialization range.
    pub init_low: f64,
    pub init_high: f64,
    pub forecast: ForecastMode,
    pub distance: DistanceMetric,
    pub dims: LstmDims,
    pub anomaly: Option<AnomalySpec>,
    pub methods: Vec<MethodConfig>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            inputs: Vec::new(),
            test_inputs: Vec::new(),
            layout: CsvLayout::SingleColumn,
            train_fraction: 0.7,
            seeds: vec![1, 2, 3, 4, 5],
            output_dir: PathBuf::from("out"),
            init_low: crate::lstm::DEFAULT_INIT_LOW,
            init_high: crate::lstm::DEFAULT_INIT_HIGH,
            forecast: ForecastMode::default(),
            distance: DistanceMetric::default(),
            dims: LstmDims::default(),
            anomaly: None,
            methods: Vec::new(),
        }
    }
}

impl ExperimentConfig {
    /// How the test portion of each series is obtained: an external test
    /// file when one is configured, otherwise the leading-fraction split.
    pub fn split_spec(&self) -> SplitSpec {
        if self.test_inputs.is_empty() {
            SplitSpec::Fraction(self.train_fraction)
        } else {
            SplitSpec::ExternalTest
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ExperimentError> {
        toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))
    }

    pub fn to_toml_string(&self) -> Result<String, ExperimentError> {
        toml::to_string_pretty(self).map_err(|e| ExperimentError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.inputs.is_empty() {
            return Err(ExperimentError::Config("no input files given".into()));
        }
        if self.methods.is_empty() {
            return Err(ExperimentError::Config("no methods given".into()));
        }
        if self.seeds.is_empty() {
            return Err(ExperimentError::Config("no seeds given".into()));
        }
        if self.init_low >= self.init_high || self.init_low.is_nan() || self.init_high.is_nan() {
            return Err(ExperimentError::Config(format!(
                "init range [{}, {}) is empty",
                self.init_low, self.init_high
            )));
        }
        if matches!(self.split_spec(), SplitSpec::Fraction(f) if !(f > 0.0 && f < 1.0)) {
            return Err(ExperimentError::Config(format!(
                "train_fraction must lie strictly between 0 and 1, got {}",
                self.train_fraction
            )));
        }
        let mut names: Vec<String> = self.methods.iter().map(|m| m.display_name()).collect();
        names.sort();
        names.dedup();
        if names.len() != self.methods.len() {
            return Err(ExperimentError::Config(
                "method names must be unique".into(),
            ));
        }
        self.dims
            .validate()
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        for method in &self.methods {
            method
                .pastprop
                .validate()
                .map_err(|e| ExperimentError::Config(format!("{}: {e}", method.display_name())))?;
        }
        Ok(())
    }
}
