use rayon::prelude::*;
use serde::Serialize;

use super::{circles, iris, split_with, CirclesParams, LabeledDataset};
use crate::classifier::{interfere_and_read, prepare_state, TrainingSet};
use crate::encoding::{Pipeline, PipelineOptions};
use crate::error::{Error, Result};
use crate::seeding::task_rng;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DatasetSpec {
    Iris {
        classes: (u8, u8),
        features: Vec<usize>,
    },
    Circles {
        params: CirclesParams,
        seed: u64,
    },
}

impl DatasetSpec {
    pub fn load(&self) -> Result<LabeledDataset> {
        match self {
            DatasetSpec::Iris { classes, features } => iris(*classes, features),
            DatasetSpec::Circles { params, seed } => circles(*params, *seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchmarkOptions {
    pub repetitions: usize,
    pub train_fraction: f64,
    pub feature_map_copies: usize,
    pub seed: u64,
}

impl Default for BenchmarkOptions {
    fn default() -> Self {
        BenchmarkOptions {
            repetitions: 1000,
            train_fraction: 0.8,
            feature_map_copies: 1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub dataset: String,
    pub spec: DatasetSpec,
    pub options: BenchmarkOptions,
    pub repetitions: usize,
    pub mean_error: f64,
    /// Population variance of the per-repetition test errors.
    pub error_variance: f64,
    pub mean_p_acc: f64,
    /// Test points whose readout failed (impossible branch or a row that
    /// could not be normalized); each is counted as misclassified.
    pub failures: u64,
    #[serde(skip)]
    pub per_repetition_error: Vec<f64>,
}

/// Sum with Neumaier's compensation.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

struct Repetition {
    error: f64,
    mean_p_acc: f64,
    failures: u64,
}

fn run_repetition(
    data: &LabeledDataset,
    options: &BenchmarkOptions,
    rep: usize,
) -> Result<Repetition> {
    let mut rng = task_rng(options.seed, rep as u64);
    let (train, test) = split_with(data, options.train_fraction, &mut rng)?;
    let pipeline = Pipeline::fit(
        &train,
        PipelineOptions {
            feature_map_copies: options.feature_map_copies,
            standardize: true,
            normalize: true,
        },
    )?;
    let train = pipeline.transform(&train)?;
    let training = TrainingSet::new(train.rows, train.labels)?;

    let mut wrong = 0u64;
    let mut failures = 0u64;
    let mut p_accs = Vec::with_capacity(test.len());
    for (row, label) in test.rows.iter().zip(&test.labels) {
        let outcome = pipeline
            .transform_row(row)
            .and_then(|x| prepare_state(&training, &x))
            .and_then(|state| interfere_and_read(&state));
        match outcome {
            Ok(out) => {
                p_accs.push(out.p_acc);
                if out.predicted != *label {
                    wrong += 1;
                }
            }
            Err(Error::ImpossibleBranch { .. } | Error::ZeroVector { .. }) => {
                failures += 1;
                wrong += 1;
            }
            Err(e) => return Err(e),
        }
    }
    let mean_p_acc = if p_accs.is_empty() {
        0.0
    } else {
        neumaier_sum(p_accs.iter().copied()) / p_accs.len() as f64
    };
    Ok(Repetition {
        error: wrong as f64 / test.len() as f64,
        mean_p_acc,
        failures,
    })
}

/// Repeated random train/test splits, each preprocessed on its training
/// part and classified point by point with the exact quantum readout.
/// Repetition `r` draws its split from stream `r` of the master seed.
pub fn run_benchmark(spec: &DatasetSpec, options: &BenchmarkOptions) -> Result<BenchmarkReport> {
    if options.repetitions == 0 {
        return Err(Error::Argument("repetitions must be >= 1".into()));
    }
    let data = spec.load()?;
    let reps: Vec<Repetition> = (0..options.repetitions)
        .into_par_iter()
        .map(|rep| run_repetition(&data, options, rep))
        .collect::<Result<_>>()?;

    let n = reps.len() as f64;
    let per_repetition_error: Vec<f64> = reps.iter().map(|r| r.error).collect();
    let mean_error = neumaier_sum(per_repetition_error.iter().copied()) / n;
    let error_variance = neumaier_sum(
        per_repetition_error
            .iter()
            .map(|e| (e - mean_error).powi(2)),
    ) / n;
    let mean_p_acc = neumaier_sum(reps.iter().map(|r| r.mean_p_acc)) / n;
    let failures = reps.iter().map(|r| r.failures).sum();

    Ok(BenchmarkReport {
        dataset: data.name.clone(),
        spec: spec.clone(),
        options: *options,
        repetitions: options.repetitions,
        mean_error,
        error_variance,
        mean_p_acc,
        failures,
        per_repetition_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum() {
        let values = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(neumaier_sum(values), 2.0);
    }

    #[test]
    fn small_iris_run() {
        let spec = DatasetSpec::Iris {
            classes: (1, 2),
            features: vec![0, 1, 2, 3],
        };
        let opts = BenchmarkOptions {
            repetitions: 5,
            ..Default::default()
        };
        let report = run_benchmark(&spec, &opts).unwrap();
        assert_eq!(report.per_repetition_error.len(), 5);
        assert!(report.mean_error <= 0.05);
        assert!((0.0..=1.0).contains(&report.mean_p_acc));
        assert_eq!(report, run_benchmark(&spec, &opts).unwrap());
    }

    #[test]
    fn zero_repetitions_rejected() {
        let spec = DatasetSpec::Iris {
            classes: (1, 2),
            features: vec![0],
        };
        let opts = BenchmarkOptions {
            repetitions: 0,
            ..Default::default()
        };
        assert!(run_benchmark(&spec, &opts).is_err());
    }
}
