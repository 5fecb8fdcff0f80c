//! Classical preprocessing: standardization, unit normalization, zero
//! padding and the tensor-copy feature map.

use serde::Serialize;

use crate::data::LabeledDataset;
use crate::error::{Error, Result};

pub type FeatureVector = Vec<f64>;

/// Tolerance for treating a vector as unit-norm.
pub const UNIT_TOLERANCE: f64 = 1e-10;

/// Vectors at or below this norm cannot be normalized.
pub const ZERO_NORM: f64 = 1e-12;

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn ensure_unit(v: &[f64]) -> Result<()> {
    let n = norm(v);
    if (n - 1.0).abs() > UNIT_TOLERANCE || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Normalization { norm: n });
    }
    Ok(())
}

pub fn normalize(v: &[f64]) -> Result<FeatureVector> {
    let n = norm(v);
    if n.is_nan() || n <= ZERO_NORM {
        return Err(Error::ZeroVector { norm: n });
    }
    Ok(v.iter().map(|x| x / n).collect())
}

/// Appends zeros up to the next power of two.
pub fn pad_to_power_of_two(v: &[f64]) -> FeatureVector {
    let mut out = v.to_vec();
    out.resize(v.len().next_power_of_two(), 0.0);
    out
}

/// k-fold Kronecker power of `v`, without any norm requirement. Entry
/// `(i_1, ..., i_k)` sits at index `i_1 N^{k-1} + ... + i_k`.
pub fn kronecker_power(v: &[f64], copies: usize) -> FeatureVector {
    let mut out = vec![1.0];
    for _ in 0..copies {
        out = out
            .iter()
            .flat_map(|&a| v.iter().map(move |&b| a * b))
            .collect();
    }
    out
}

/// Classical image of preparing `copies` copies of the amplitude-encoded
/// state: the Kronecker power of a unit vector.
pub fn tensor_copy_map(v: &[f64], copies: usize) -> Result<FeatureVector> {
    if copies == 0 {
        return Err(Error::Argument("copies must be >= 1".into()));
    }
    ensure_unit(v)?;
    Ok(kronecker_power(v, copies))
}

/// Per-feature affine map to zero mean and unit population variance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[FeatureVector]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Argument(format!(
                "standardization needs at least 2 samples, got {}",
                rows.len()
            )));
        }
        let dim = rows[0].len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Argument("rows have differing dimensions".into()));
        }
        let n = rows.len() as f64;
        let mut means = vec![0.0; dim];
        for row in rows {
            for (m, x) in means.iter_mut().zip(row) {
                *m += x;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut stds = vec![0.0; dim];
        for row in rows {
            for ((s, x), m) in stds.iter_mut().zip(row).zip(&means) {
                *s += (x - m).powi(2);
            }
        }
        for (feature, s) in stds.iter_mut().enumerate() {
            *s = (*s / n).sqrt();
            // relative to the feature's scale, so that rounding noise in a
            // constant column is still caught
            let scale = means[feature].abs().max(1.0);
            if *s <= 1e-12 * scale {
                return Err(Error::DegenerateFeature { feature });
            }
        }
        Ok(Standardizer { means, stds })
    }

    pub fn apply(&self, row: &[f64]) -> Result<FeatureVector> {
        if row.len() != self.means.len() {
            return Err(Error::Argument(format!(
                "row dimension {} does not match fitted dimension {}",
                row.len(),
                self.means.len()
            )));
        }
        Ok(row
            .iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(x, (m, s))| (x - m) / s)
            .collect())
    }
}

/// Parameters fitted by the preprocessing pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreprocessingReport {
    pub feature_map_copies: usize,
    pub standardizer: Option<Standardizer>,
    pub normalized: bool,
    /// Feature dimension after the map, and the padded dimension the
    /// amplitude encoding uses.
    pub padding: (usize, usize),
}

/// Fits a standardizer on `dataset` and applies it to every row.
pub fn standardize(dataset: &LabeledDataset) -> Result<(LabeledDataset, PreprocessingReport)> {
    pipeline(
        dataset,
        &PipelineOptions {
            feature_map_copies: 1,
            standardize: true,
            normalize: false,
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PipelineOptions {
    pub feature_map_copies: usize,
    pub standardize: bool,
    pub normalize: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            feature_map_copies: 1,
            standardize: true,
            normalize: true,
        }
    }
}

/// Fitted preprocessing: feature map, then standardization, then
/// normalization. Statistics come from the fitting set only.
#[derive(Debug, Clone, PartialEq)]
pub struct Pipeline {
    options: PipelineOptions,
    standardizer: Option<Standardizer>,
    mapped_dim: usize,
}

impl Pipeline {
    pub fn fit(train: &LabeledDataset, options: PipelineOptions) -> Result<Self> {
        if options.feature_map_copies == 0 {
            return Err(Error::Argument("feature_map_copies must be >= 1".into()));
        }
        let mapped: Vec<FeatureVector> = train
            .rows
            .iter()
            .map(|r| kronecker_power(r, options.feature_map_copies))
            .collect();
        let standardizer = if options.standardize {
            Some(Standardizer::fit(&mapped)?)
        } else {
            None
        };
        let mapped_dim = mapped.first().map_or(0, Vec::len);
        Ok(Pipeline {
            options,
            standardizer,
            mapped_dim,
        })
    }

    pub fn transform_row(&self, row: &[f64]) -> Result<FeatureVector> {
        let mut v = kronecker_power(row, self.options.feature_map_copies);
        if let Some(s) = &self.standardizer {
            v = s.apply(&v)?;
        }
        if self.options.normalize {
            v = normalize(&v)?;
        }
        Ok(v)
    }

    pub fn transform(&self, dataset: &LabeledDataset) -> Result<LabeledDataset> {
        let rows = dataset
            .rows
            .iter()
            .map(|r| self.transform_row(r))
            .collect::<Result<Vec<_>>>()?;
        let mut out = dataset.with_rows(rows)?;
        out.provenance.feature_map_copies *= self.options.feature_map_copies;
        out.provenance.standardized |= self.options.standardize;
        out.provenance.normalized = self.options.normalize;
        Ok(out)
    }

    pub fn report(&self) -> PreprocessingReport {
        PreprocessingReport {
            feature_map_copies: self.options.feature_map_copies,
            standardizer: self.standardizer.clone(),
            normalized: self.options.normalize,
            padding: (self.mapped_dim, self.mapped_dim.next_power_of_two()),
        }
    }
}

/// Fits the pipeline on `dataset` and transforms it.
pub fn pipeline(
    dataset: &LabeledDataset,
    options: &PipelineOptions,
) -> Result<(LabeledDataset, PreprocessingReport)> {
    let fitted = Pipeline::fit(dataset, *options)?;
    Ok((fitted.transform(dataset)?, fitted.report()))
}
