//! Acceptance suite: one test per release criterion, each printing a
//! `criterion NN ... PASS` line (run with `--nocapture` to see them).
//!
//! Covers the gradient oracles, the bitwise equivalence guarantees between
//! training variants, overlap averaging, the anomaly injector contract, the
//! metric oracles, desk-scale reconstruction behavior, the gain-vs-error
//! correlation, and byte-level reproducibility of experiment runs.

mod common;

use std::time::Instant;

use common::{
    daily_seasonal, fd_input_grad, fd_weight_grad, grads_agree, matrix_ref, random_sample,
    seasonal_series, MATRIX_NAMES,
};
use pastprop::data::{
    inject_anomaly, normalize, AnomalySpec, CsvLayout, MagnitudeLevel, NormalizationParams,
};
use pastprop::engine::{
    train, train_observed, CorrectionBuffer, PastpropConfig, TopK, Variant,
};
use pastprop::eval::{
    mse, nmse, outside_loss, pearson, reconstruction_ability, DistanceMetric,
};
use pastprop::experiment::{ExperimentConfig, MethodConfig};
use pastprop::lstm::{backward_window, forward_window, predict, LstmDims, LstmWeights};
use pastprop::numeric::SeededRng;

const FD_STEP: f64 = 1e-5;
const FD_REL_TOL: f64 = 1e-4;
const FD_ABS_FLOOR: f64 = 1e-7;

fn oracle_dims() -> LstmDims {
    LstmDims {
        input_dim: 1,
        hidden_units: 8,
        sample_size: 5,
        label_size: 1,
    }
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

fn weights_equal_bitwise(a: &LstmWeights, b: &LstmWeights) -> bool {
    [
        (&a.wi, &b.wi),
        (&a.wf, &b.wf),
        (&a.wo, &b.wo),
        (&a.wg, &b.wg),
        (&a.wy, &b.wy),
    ]
    .iter()
    .all(|(ma, mb)| bits(ma.as_slice()) == bits(mb.as_slice()))
}

/// Normalized training series used by the variant-equivalence criteria.
fn normalized_series(len: usize, seed: u64) -> Vec<f64> {
    normalize(&seasonal_series(len, seed)).unwrap().0
}

#[test]
fn criterion_01_weight_gradient_oracle() {
    let started = Instant::now();
    let dims = oracle_dims();
    let mut checked = 0usize;
    for seed in 0..20u64 {
        let mut rng = SeededRng::new(seed);
        let weights = LstmWeights::init(&dims, &mut rng).unwrap();
        let (window, label) = random_sample(&mut rng, &dims);
        let cache = forward_window(&weights, &window, &dims).unwrap();
        let result = backward_window(&weights, &cache, &label).unwrap();

        for (m, name) in MATRIX_NAMES.iter().enumerate() {
            let analytic = matrix_ref(&result.weight_grads, m);
            for (idx, &a) in analytic.iter().enumerate() {
                let numeric =
                    fd_weight_grad(&weights, m, idx, &window, &label, &dims, FD_STEP);
                assert!(
                    grads_agree(a, numeric, FD_REL_TOL, FD_ABS_FLOOR),
                    "seed {seed}: {name}[{idx}]: analytic {a} vs numeric {numeric}"
                );
                checked += 1;
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "took {elapsed:.2}s, budget 10s");
    println!(
        "criterion 01 weight gradient oracle: {checked} entries across 20 configs in {elapsed:.2}s -> PASS"
    );
}

#[test]
fn criterion_02_input_gradient_oracle() {
    let started = Instant::now();
    let dims = oracle_dims();
    let mut checked = 0usize;
    for seed in 0..20u64 {
        let mut rng = SeededRng::new(seed);
        let weights = LstmWeights::init(&dims, &mut rng).unwrap();
        let (window, label) = random_sample(&mut rng, &dims);
        let cache = forward_window(&weights, &window, &dims).unwrap();
        let result = backward_window(&weights, &cache, &label).unwrap();

        for (t, grad) in result.input_grads.iter().enumerate() {
            for (d, &a) in grad.iter().enumerate() {
                let idx = t * dims.input_dim + d;
                let numeric = fd_input_grad(&weights, &window, idx, &label, &dims, FD_STEP);
                assert!(
                    grads_agree(a, numeric, FD_REL_TOL, FD_ABS_FLOOR),
                    "seed {seed}: input[{t}]: analytic {a} vs numeric {numeric}"
                );
                checked += 1;
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "took {elapsed:.2}s, budget 10s");
    println!(
        "criterion 02 input gradient oracle: {checked} entries across 20 configs in {elapsed:.2}s -> PASS"
    );
}

#[test]
fn criterion_03_first_epoch_weight_equivalence() {
    let dims = LstmDims {
        input_dim: 1,
        hidden_units: 8,
        sample_size: 5,
        label_size: 1,
    };
    let series = normalized_series(60, 3);
    let w0 = LstmWeights::init(&dims, &mut SeededRng::new(11)).unwrap();

    let capture_first_epoch = |variant: Variant| -> LstmWeights {
        let cfg = PastpropConfig {
            variant,
            correction_rate: 0.5,
            epochs: 3,
            ..PastpropConfig::default()
        };
        let mut after_first: Option<LstmWeights> = None;
        train_observed(&series, &dims, &cfg, w0.clone(), |snap| {
            if snap.epoch == 1 {
                after_first = Some(snap.weights.clone());
            }
        })
        .unwrap();
        after_first.unwrap()
    };

    let standard = capture_first_epoch(Variant::Standard);
    let epochwise = capture_first_epoch(Variant::EpochWise);
    let selective = capture_first_epoch(Variant::Selective);

    assert!(weights_equal_bitwise(&standard, &epochwise));
    assert!(weights_equal_bitwise(&standard, &selective));
    println!(
        "criterion 03 first-epoch equivalence: epoch-wise and selective weights bitwise-equal standard -> PASS"
    );
}

#[test]
fn criterion_04_zero_rate_reduction() {
    let dims = LstmDims {
        input_dim: 1,
        hidden_units: 8,
        sample_size: 5,
        label_size: 1,
    };
    let series = normalized_series(60, 5);

    for seed in [1u64, 2, 3] {
        let w0 = LstmWeights::init(&dims, &mut SeededRng::new(seed)).unwrap();
        let run = |variant: Variant| {
            train(
                &series,
                &dims,
                &PastpropConfig {
                    variant,
                    correction_rate: 0.0,
                    epochs: 3,
                    ..PastpropConfig::default()
                },
                w0.clone(),
            )
            .unwrap()
        };
        let standard = run(Variant::Standard);
        for variant in [Variant::EpochWise, Variant::InstanceWise, Variant::Selective] {
            let outcome = run(variant);
            assert!(
                weights_equal_bitwise(&outcome.weights, &standard.weights),
                "seed {seed} {variant}: weights differ at rate 0"
            );
            assert_eq!(
                bits(&outcome.corrected_series),
                bits(&series),
                "seed {seed} {variant}: series changed at rate 0"
            );
            assert_eq!(
                bits(&outcome.loss_trace),
                bits(&standard.loss_trace),
                "seed {seed} {variant}: loss trace differs at rate 0"
            );
        }
    }
    println!(
        "criterion 04 zero-rate reduction: all variants bitwise-equal standard across 3 seeds -> PASS"
    );
}

#[test]
fn criterion_05_selective_degenerations() {
    let dims = LstmDims {
        input_dim: 1,
        hidden_units: 8,
        sample_size: 5,
        label_size: 1,
    };
    let series = normalized_series(60, 9);
    let w0 = LstmWeights::init(&dims, &mut SeededRng::new(31)).unwrap();

    // (embargo 0, threshold 0, neighborhood 0, top_k all) equals epoch-wise.
    let identity_filter = train(
        &series,
        &dims,
        &PastpropConfig {
            variant: Variant::Selective,
            correction_rate: 0.5,
            correction_threshold: 0.0,
            neighborhood_size: 0,
            epoch_embargo: 0,
            top_k: TopK::All,
            epochs: 3,
            ..PastpropConfig::default()
        },
        w0.clone(),
    )
    .unwrap();
    let epochwise = train(
        &series,
        &dims,
        &PastpropConfig {
            variant: Variant::EpochWise,
            correction_rate: 0.5,
            epochs: 3,
            ..PastpropConfig::default()
        },
        w0.clone(),
    )
    .unwrap();
    assert!(weights_equal_bitwise(&identity_filter.weights, &epochwise.weights));
    assert_eq!(
        bits(&identity_filter.corrected_series),
        bits(&epochwise.corrected_series)
    );

    // Embargo covering every epoch equals standard.
    let embargoed = train(
        &series,
        &dims,
        &PastpropConfig {
            variant: Variant::Selective,
            correction_rate: 0.5,
            epoch_embargo: 3,
            epochs: 3,
            ..PastpropConfig::default()
        },
        w0.clone(),
    )
    .unwrap();
    let standard = train(
        &series,
        &dims,
        &PastpropConfig {
            variant: Variant::Standard,
            epochs: 3,
            ..PastpropConfig::default()
        },
        w0,
    )
    .unwrap();
    assert!(weights_equal_bitwise(&embargoed.weights, &standard.weights));
    assert_eq!(
        bits(&embargoed.corrected_series),
        bits(&standard.corrected_series)
    );
    println!(
        "criterion 05 selective degenerations: identity filter == epoch-wise, full embargo == standard (bitwise) -> PASS"
    );
}

#[test]
fn criterion_06_overlap_averaging() {
    // Counts on a length-7 series with sample 5 and three stride-1 windows.
    let mut buffer = CorrectionBuffer::new(7);
    let grads = [0.2, -0.4, 0.6, -0.8, 1.0];
    for start in 0..3 {
        buffer.accumulate(start, &grads, 1.0).unwrap();
    }
    assert_eq!(buffer.counts(), &[1, 2, 3, 3, 3, 2, 1]);

    // Finalize divides sums by counts exactly.
    let corrections = buffer.finalize();
    for (t, &c) in corrections.iter().enumerate() {
        let count = buffer.counts()[t] as f64;
        assert_eq!(c, buffer.sums()[t] / count, "index {t}");
    }

    // Identical per-window deltas yield overlap-independent corrections.
    // A dyadic delta keeps the sum-then-divide arithmetic exact, so the
    // comparison can be bitwise.
    let d = 0.375;
    let mut uniform = CorrectionBuffer::new(7);
    for start in 0..3 {
        uniform.accumulate(start, &[-d; 5], 1.0).unwrap();
    }
    for (t, &c) in uniform.finalize().iter().enumerate() {
        assert_eq!(c, d, "index {t}: correction depends on overlap count");
    }
    // And within normal rounding for an arbitrary delta.
    let d = 0.37;
    let mut uniform = CorrectionBuffer::new(7);
    for start in 0..3 {
        uniform.accumulate(start, &[-d; 5], 1.0).unwrap();
    }
    for (t, &c) in uniform.finalize().iter().enumerate() {
        assert!((c - d).abs() < 1e-15, "index {t}");
    }
    println!(
        "criterion 06 overlap averaging: counts [1,2,3,3,3,2,1], exact division, overlap-independent -> PASS"
    );
}

#[test]
fn criterion_07_anomaly_injector() {
    let series: Vec<f64> = (0..40).map(|t| 0.05 + 0.9 * ((t as f64) / 39.0)).collect();

    // Level 0: exact zeros inside, bitwise identity outside.
    let spec = AnomalySpec {
        start: 12,
        length: 9,
        level: MagnitudeLevel::Zero,
        chunk_count: 4,
        seed: 3,
    };
    let (anomalous, mask) = inject_anomaly(&series, &spec).unwrap();
    for t in 0..40 {
        if (12..21).contains(&t) {
            assert_eq!(anomalous[t], 0.0);
            assert!(mask[t]);
        } else {
            assert_eq!(anomalous[t].to_bits(), series[t].to_bits());
            assert!(!mask[t]);
        }
    }

    // Levels 25/50: every zone index moved by exactly max(0.1, pct * value).
    for level in [MagnitudeLevel::TwentyFive, MagnitudeLevel::Fifty] {
        let spec = AnomalySpec {
            start: 5,
            length: 17,
            level,
            chunk_count: 3,
            seed: 8,
        };
        let (anomalous, mask) = inject_anomaly(&series, &spec).unwrap();
        let pct = level.percentage() as f64 / 100.0;
        for t in 0..40 {
            if mask[t] {
                let change = (pct * series[t]).max(0.1);
                let up = series[t] + change;
                let down = series[t] - change;
                assert!(
                    anomalous[t].to_bits() == up.to_bits()
                        || anomalous[t].to_bits() == down.to_bits(),
                    "index {t}: {} is neither {up} nor {down}",
                    anomalous[t]
                );
            } else {
                assert_eq!(anomalous[t].to_bits(), series[t].to_bits());
            }
        }
    }
    println!(
        "criterion 07 anomaly injector: level-0 exact zeros, levels 25/50 obey max(0.1, pct*value) -> PASS"
    );
}

#[test]
fn criterion_08_metric_oracles() {
    let tol = 1e-9;
    let close = |a: f64, b: f64| (a - b).abs() < tol;

    // MSE.
    assert!(close(mse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0));
    assert!(close(mse(&[2.0, 2.0], &[0.0, 0.0]).unwrap(), 4.0));
    assert!(close(
        mse(&[1.0, 2.0, 3.0], &[1.0, 1.0, 1.0]).unwrap(),
        5.0 / 3.0
    ));

    // NMSE.
    assert!(close(nmse(&[1.0, 3.0], &[1.0, 3.0]).unwrap(), 0.0));
    assert!(close(nmse(&[4.0, 4.0], &[2.0, 2.0]).unwrap(), 2.0));
    let c = 3.0;
    let base = nmse(&[1.0, 2.0, 4.0], &[1.5, 2.5, 3.0]).unwrap();
    let scaled = nmse(&[3.0, 6.0, 12.0], &[4.5, 7.5, 9.0]).unwrap();
    assert!(close(scaled, c * base));

    // Pearson.
    let xs = [1.0, 2.0, 3.0];
    assert!(close(pearson(&xs, &xs).unwrap(), 1.0));
    assert!(close(pearson(&xs, &[-1.0, -2.0, -3.0]).unwrap(), -1.0));
    assert!(close(
        pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap(),
        0.981_980_506_061_965_8
    ));

    // Reconstruction ability.
    let original = vec![1.0, 2.0, 3.0, 4.0];
    let anomalous = vec![1.0, 0.0, 0.0, 4.0];
    let zone = vec![false, true, true, false];
    assert!(close(
        reconstruction_ability(&original, &anomalous, &original, &zone, DistanceMetric::L2)
            .unwrap(),
        1.0
    ));
    assert!(close(
        reconstruction_ability(&original, &anomalous, &anomalous, &zone, DistanceMetric::L2)
            .unwrap(),
        0.0
    ));
    let midpoint: Vec<f64> = original
        .iter()
        .zip(&anomalous)
        .map(|(&o, &a)| (o + a) / 2.0)
        .collect();
    assert!(close(
        reconstruction_ability(&original, &anomalous, &midpoint, &zone, DistanceMetric::L2)
            .unwrap(),
        0.5
    ));

    // Outside loss.
    assert!(close(
        outside_loss(&original, &original, &zone, DistanceMetric::L2).unwrap(),
        0.0
    ));
    let mut shifted = original.clone();
    shifted[3] += 0.25;
    let out = outside_loss(&original, &shifted, &zone, DistanceMetric::L2).unwrap();
    assert!(close(out, 0.25));
    assert!(out >= 0.0);

    println!("criterion 08 metric oracles: all examples within 1e-9 -> PASS");
}

#[test]
fn criterion_09_reconstruction_behavior() {
    let started = Instant::now();
    let dims = LstmDims {
        input_dim: 1,
        hidden_units: 32,
        sample_size: 5,
        label_size: 1,
    };

    // Seasonal series, leading 70% for training, level-0 anomaly over the
    // first five training points (a series that opens with missing data).
    let raw = seasonal_series(400, 7);
    let train_len = 280;
    let params = NormalizationParams::fit(&raw[..train_len]).unwrap();
    let train_clean = params.apply(&raw[..train_len]);
    let test = params.apply(&raw[train_len..]);
    let spec = AnomalySpec {
        start: 0,
        length: 5,
        level: MagnitudeLevel::Zero,
        chunk_count: 1,
        seed: 1,
    };
    let (train_anom, mask) = inject_anomaly(&train_clean, &spec).unwrap();

    let rolling_mse = |weights: &LstmWeights| -> f64 {
        let mut full = train_anom.clone();
        full.extend_from_slice(&test);
        let mut preds = Vec::new();
        let mut targets = Vec::new();
        for start in (train_len - 5)..=(full.len() - 6) {
            preds.push(predict(weights, &full[start..start + 5], &dims).unwrap()[0]);
            targets.push(full[start + 5]);
        }
        mse(&preds, &targets).unwrap()
    };

    let mut recs = Vec::new();
    let mut outs = Vec::new();
    let mut std_mses = Vec::new();
    let mut sel_mses = Vec::new();
    for seed in 1..=5u64 {
        let mut rng = SeededRng::derive(seed, 0);
        let w0 = LstmWeights::init(&dims, &mut rng).unwrap();

        let standard = train(
            &train_anom,
            &dims,
            &PastpropConfig {
                variant: Variant::Standard,
                epochs: 60,
                learning_rate: 0.03,
                ..PastpropConfig::default()
            },
            w0.clone(),
        )
        .unwrap();
        std_mses.push(rolling_mse(&standard.weights));

        let selective = train(
            &train_anom,
            &dims,
            &PastpropConfig {
                variant: Variant::Selective,
                correction_rate: 0.2,
                correction_threshold: 0.08,
                neighborhood_size: 0,
                epoch_embargo: 20,
                top_k: TopK::Count(5),
                epochs: 60,
                learning_rate: 0.03,
                ..PastpropConfig::default()
            },
            w0,
        )
        .unwrap();
        sel_mses.push(rolling_mse(&selective.weights));
        recs.push(
            reconstruction_ability(
                &train_clean,
                &train_anom,
                &selective.corrected_series,
                &mask,
                DistanceMetric::L2,
            )
            .unwrap(),
        );
        outs.push(
            outside_loss(
                &train_clean,
                &selective.corrected_series,
                &mask,
                DistanceMetric::L2,
            )
            .unwrap(),
        );
    }

    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let rec = mean(&recs);
    let out = mean(&outs);
    let std_mse = mean(&std_mses);
    let sel_mse = mean(&sel_mses);
    let elapsed = started.elapsed().as_secs_f64();

    assert!(rec > 0.0, "reconstruction ability {rec} must be positive");
    assert!(out < 0.05, "outside loss {out} must stay below 0.05");
    assert!(
        sel_mse <= 1.1 * std_mse,
        "selective test MSE {sel_mse} exceeds standard {std_mse} by more than 10%"
    );
    assert!(elapsed < 600.0, "took {elapsed:.1}s, budget 600s");
    println!(
        "criterion 09 reconstruction behavior: reconstruction {rec:.4}, outside loss {out:.4}, \
         test MSE {sel_mse:.6} vs standard {std_mse:.6}, {elapsed:.1}s -> PASS"
    );
}

#[test]
fn criterion_10_gains_track_baseline_error() {
    let dims = LstmDims {
        input_dim: 1,
        hidden_units: 32,
        sample_size: 5,
        label_size: 1,
    };
    let train_len = 280;

    let mut std_mses = Vec::new();
    let mut gains = Vec::new();
    // Severity i damages the training range with i short dropout zones at
    // varying seasonal phases.
    for severity in 0..12usize {
        let raw = daily_seasonal(400, 0.2, 7);
        let params = NormalizationParams::fit(&raw[..train_len]).unwrap();
        let mut train_series = params.apply(&raw[..train_len]);
        let test = params.apply(&raw[train_len..]);
        for z in 0..severity {
            let spec = AnomalySpec {
                start: (z * 23) % (train_len - 10),
                length: 4,
                level: MagnitudeLevel::Zero,
                chunk_count: 1,
                seed: 1,
            };
            train_series = inject_anomaly(&train_series, &spec).unwrap().0;
        }

        let rolling_mse = |weights: &LstmWeights| -> f64 {
            let mut full = train_series.clone();
            full.extend_from_slice(&test);
            let mut preds = Vec::new();
            let mut targets = Vec::new();
            for start in (train_len - 5)..=(full.len() - 6) {
                preds.push(predict(weights, &full[start..start + 5], &dims).unwrap()[0]);
                targets.push(full[start + 5]);
            }
            mse(&preds, &targets).unwrap()
        };

        let mut std_acc = Vec::new();
        let mut sel_acc = Vec::new();
        for seed in 1..=2u64 {
            let mut rng = SeededRng::derive(seed, severity as u64);
            let w0 = LstmWeights::init(&dims, &mut rng).unwrap();
            let standard = train(
                &train_series,
                &dims,
                &PastpropConfig {
                    variant: Variant::Standard,
                    epochs: 40,
                    learning_rate: 0.03,
                    ..PastpropConfig::default()
                },
                w0.clone(),
            )
            .unwrap();
            std_acc.push(rolling_mse(&standard.weights));

            let selective = train(
                &train_series,
                &dims,
                &PastpropConfig {
                    variant: Variant::Selective,
                    correction_rate: 0.2,
                    correction_threshold: 0.04,
                    neighborhood_size: 1,
                    epoch_embargo: 20,
                    top_k: TopK::Fraction(0.1),
                    epochs: 40,
                    learning_rate: 0.03,
                    ..PastpropConfig::default()
                },
                w0,
            )
            .unwrap();
            sel_acc.push(rolling_mse(&selective.weights));
        }
        let std_mean = std_acc.iter().sum::<f64>() / std_acc.len() as f64;
        let sel_mean = sel_acc.iter().sum::<f64>() / sel_acc.len() as f64;
        std_mses.push(std_mean);
        gains.push(std_mean - sel_mean);
    }

    let r = pearson(&std_mses, &gains).unwrap();
    assert!(
        r > 0.0,
        "gain should correlate positively with baseline MSE, got r = {r}"
    );
    println!(
        "criterion 10 gains track baseline error: Pearson r = {r:.4} over 12 severities -> PASS"
    );
}

#[test]
fn criterion_11_byte_identical_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("sample.csv");
    pastprop::data::write_series_csv(
        &input,
        "sample",
        &seasonal_series(120, 7),
        CsvLayout::SingleColumn,
    )
    .unwrap();

    let mut config = ExperimentConfig {
        inputs: vec![input],
        seeds: vec![1, 2],
        dims: LstmDims {
            input_dim: 1,
            hidden_units: 8,
            sample_size: 5,
            label_size: 1,
        },
        methods: vec![
            MethodConfig::new(PastpropConfig {
                variant: Variant::Standard,
                epochs: 3,
                ..PastpropConfig::default()
            }),
            MethodConfig::new(PastpropConfig {
                variant: Variant::InstanceWise,
                correction_rate: 0.3,
                epochs: 3,
                ..PastpropConfig::default()
            }),
        ],
        anomaly: Some(AnomalySpec {
            start: 10,
            length: 6,
            level: MagnitudeLevel::Zero,
            chunk_count: 1,
            seed: 4,
        }),
        ..ExperimentConfig::default()
    };

    let read = |dir: &std::path::Path, name: &str| std::fs::read(dir.join(name)).unwrap();

    config.output_dir = dir.path().join("run_a");
    let report_a = pastprop::experiment::run_experiment(&config).unwrap();
    config.output_dir = dir.path().join("run_b");
    let report_b = pastprop::experiment::run_experiment(&config).unwrap();
    assert!(!report_a.has_errors() && !report_b.has_errors());

    let mut compared = 0usize;
    for name in ["report.json", "report.csv", "gains.csv"] {
        assert_eq!(
            read(&dir.path().join("run_a"), name),
            read(&dir.path().join("run_b"), name),
            "{name} differs between reruns"
        );
        compared += 1;
    }
    for cell in &report_a.cells {
        let file = cell.corrected_series_file.as_ref().unwrap();
        assert_eq!(
            read(&dir.path().join("run_a"), file),
            read(&dir.path().join("run_b"), file),
            "{file} differs between reruns"
        );
        compared += 1;
    }
    println!(
        "criterion 11 byte-identical reruns: {compared} output files bitwise-equal across reruns -> PASS"
    );
}
