//! Forecast accuracy and series-similarity metrics.
//!
//! Reconstruction ability compares how far a corrected series sits from the
//! clean original inside the damaged zone, relative to how far the damaged
//! series sat: 1 means the zone was fully restored, 0 means the corrections
//! did nothing, negative values mean the damage got worse. The outside loss
//! is the distance between corrected and original restricted to the
//! untouched region, which good corrections keep near zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty input")]
    Empty,
    #[error("targets have zero mean; normalized MSE is undefined")]
    ZeroMeanTargets,
    #[error("need at least two points for correlation, got {0}")]
    TooFewPoints(usize),
    #[error("zero variance in {side} input; correlation is undefined")]
    ZeroVariance { side: &'static str },
    #[error("anomaly zone is empty")]
    EmptyZone,
    #[error("everything is inside the zone; outside loss is undefined")]
    EmptyComplement,
    #[error("anomalous series equals the original inside the zone; reconstruction ability is undefined")]
    NoAnomalyDistance,
}

/// Mean squared error.
pub fn mse(predictions: &[f64], targets: &[f64]) -> Result<f64, EvalError> {
    if predictions.len() != targets.len() {
        return Err(EvalError::LengthMismatch {
            left: predictions.len(),
            right: targets.len(),
        });
    }
    if predictions.is_empty() {
        return Err(EvalError::Empty);
    }
    let sum: f64 = predictions
        .iter()
        .zip(targets)
        .map(|(&p, &t)| (p - t) * (p - t))
        .sum();
    Ok(sum / predictions.len() as f64)
}

/// MSE divided by the mean of the target values.
///
/// This follows the definition used for cross-scale comparison; note it is
/// not scale-free (scaling both arrays by c scales the result by c).
pub fn nmse(predictions: &[f64], targets: &[f64]) -> Result<f64, EvalError> {
    let err = mse(predictions, targets)?;
    let mean: f64 = targets.iter().sum::<f64>() / targets.len() as f64;
    if mean == 0.0 {
        return Err(EvalError::ZeroMeanTargets);
    }
    Ok(err / mean)
}

/// Pearson product-moment correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    if xs.len() != ys.len() {
        return Err(EvalError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(EvalError::TooFewPoints(xs.len()));
    }
    let n = xs.len() as f64;
    let mean_x: f64 = xs.iter().sum::<f64>() / n;
    let mean_y: f64 = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 {
        return Err(EvalError::ZeroVariance { side: "first" });
    }
    if var_y == 0.0 {
        return Err(EvalError::ZeroVariance { side: "second" });
    }
    Ok(cov / (var_x.sqrt() * var_y.sqrt()))
}

/// Distance used for reconstruction metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMetric {
    #[default]
    L2,
    L1,
}

impl DistanceMetric {
    fn accumulate(&self, acc: f64, diff: f64) -> f64 {
        match self {
            DistanceMetric::L2 => acc + diff * diff,
            DistanceMetric::L1 => acc + diff.abs(),
        }
    }

    fn finish(&self, acc: f64) -> f64 {
        match self {
            DistanceMetric::L2 => acc.sqrt(),
            DistanceMetric::L1 => acc,
        }
    }
}

impl std::str::FromStr for DistanceMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l2" | "euclidean" => Ok(DistanceMetric::L2),
            "l1" | "manhattan" => Ok(DistanceMetric::L1),
            other => Err(format!("unknown distance metric '{other}' (expected l1 or l2)")),
        }
    }
}

fn masked_distance(a: &[f64], b: &[f64], mask: &[bool], inside: bool, metric: DistanceMetric) -> f64 {
    let mut acc = 0.0;
    for ((&x, &y), &m) in a.iter().zip(b).zip(mask) {
        if m == inside {
            acc = metric.accumulate(acc, x - y);
        }
    }
    metric.finish(acc)
}

fn check_lengths(original: &[f64], others: &[&[f64]], mask: &[bool]) -> Result<(), EvalError> {
    for other in others {
        if other.len() != original.len() {
            return Err(EvalError::LengthMismatch {
                left: original.len(),
                right: other.len(),
            });
        }
    }
    if mask.len() != original.len() {
        return Err(EvalError::LengthMismatch {
            left: original.len(),
            right: mask.len(),
        });
    }
    Ok(())
}

/// How much of the damage inside the zone the corrections undid.
///
/// `1 - dist(corrected, original | zone) / dist(anomalous, original | zone)`.
pub fn reconstruction_ability(
    original: &[f64],
    anomalous: &[f64],
    corrected: &[f64],
    zone_mask: &[bool],
    metric: DistanceMetric,
) -> Result<f64, EvalError> {
    check_lengths(original, &[anomalous, corrected], zone_mask)?;
    if !zone_mask.iter().any(|&m| m) {
        return Err(EvalError::EmptyZone);
    }
    let anomaly_dist = masked_distance(anomalous, original, zone_mask, true, metric);
    if anomaly_dist == 0.0 {
        return Err(EvalError::NoAnomalyDistance);
    }
    let corrected_dist = masked_distance(corrected, original, zone_mask, true, metric);
    Ok(1.0 - corrected_dist / anomaly_dist)
}

/// Distance between corrected and original outside the zone.
pub fn outside_loss(
    original: &[f64],
    corrected: &[f64],
    zone_mask: &[bool],
    metric: DistanceMetric,
) -> Result<f64, EvalError> {
    check_lengths(original, &[corrected], zone_mask)?;
    if zone_mask.iter().all(|&m| m) {
        return Err(EvalError::EmptyComplement);
    }
    Ok(masked_distance(corrected, original, zone_mask, false, metric))
}

/// Reconstruction metrics for one corrected series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub reconstruction_ability: f64,
    pub outside_loss: f64,
}

impl ReconstructionReport {
    pub fn compute(
        original: &[f64],
        anomalous: &[f64],
        corrected: &[f64],
        zone_mask: &[bool],
        metric: DistanceMetric,
    ) -> Result<Self, EvalError> {
        Ok(ReconstructionReport {
            reconstruction_ability: reconstruction_ability(
                original, anomalous, corrected, zone_mask, metric,
            )?,
            outside_loss: outside_loss(original, corrected, zone_mask, metric)?,
        })
    }
}

/// One evaluation row for a (series, method) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub id: String,
    pub variant: String,
    pub mse: f64,
    pub nmse: f64,
    pub reconstruction_ability: Option<f64>,
    pub outside_loss: Option<f64>,
    pub series_length: usize,
}

impl ReportRow {
    pub fn csv_header() -> &'static str {
        "id,variant,mse,nmse,reconstruction_ability,outside_loss,series_length"
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.id,
            self.variant,
            self.mse,
            self.nmse,
            opt(&self.reconstruction_ability),
            opt(&self.outside_loss),
            self.series_length
        )
    }
}

/// All rows as a CSV document.
pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(ReportRow::csv_header());
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}
