//! Datasets, splitting and the repeated-split benchmark.

mod benchmark;
mod circles;
mod iris;
mod split;

use serde::Serialize;

use crate::error::{Error, Result};

pub use benchmark::{neumaier_sum, run_benchmark, BenchmarkOptions, BenchmarkReport, DatasetSpec};
pub use circles::{circles, CirclesParams};
pub use iris::{iris, iris_raw, IRIS_CSV, IRIS_SHA256};
pub use split::{split, split_with};

/// Binary class label. Class qubit 0 encodes `Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "+1")]
    Plus,
}

impl Label {
    pub fn sign(self) -> f64 {
        match self {
            Label::Minus => -1.0,
            Label::Plus => 1.0,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Label::Minus => -1,
            Label::Plus => 1,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::Minus => "-1",
            Label::Plus => "+1",
        })
    }
}

/// What has been done to the rows so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Provenance {
    pub standardized: bool,
    pub normalized: bool,
    pub feature_map_copies: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledDataset {
    pub name: String,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<Label>,
    /// Original class names and the label each maps to.
    pub class_map: Vec<(String, Label)>,
    /// Row position in the source data, for addressing samples by their
    /// original index.
    pub source_index: Vec<usize>,
    pub provenance: Provenance,
}

impl LabeledDataset {
    pub fn new(name: impl Into<String>, rows: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::Argument(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::Argument("rows differ in dimension".into()));
            }
        }
        let source_index = (0..rows.len()).collect();
        Ok(LabeledDataset {
            name: name.into(),
            rows,
            labels,
            class_map: vec![("-1".into(), Label::Minus), ("+1".into(), Label::Plus)],
            source_index,
            provenance: Provenance {
                feature_map_copies: 1,
                ..Default::default()
            },
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Same labels and metadata with replacement rows.
    pub fn with_rows(&self, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != self.rows.len() {
            return Err(Error::Argument("replacement row count differs".into()));
        }
        Ok(LabeledDataset {
            rows,
            ..self.clone()
        })
    }

    /// Subset by row positions, in the given order.
    pub fn select(&self, positions: &[usize]) -> LabeledDataset {
        LabeledDataset {
            name: self.name.clone(),
            rows: positions.iter().map(|&p| self.rows[p].clone()).collect(),
            labels: positions.iter().map(|&p| self.labels[p]).collect(),
            class_map: self.class_map.clone(),
            source_index: positions.iter().map(|&p| self.source_index[p]).collect(),
            provenance: self.provenance,
        }
    }

    /// Position of the row that came from `source` in the original data.
    pub fn position_of_source(&self, source: usize) -> Option<usize> {
        self.source_index.iter().position(|&s| s == source)
    }

    pub fn has_both_labels(&self) -> bool {
        self.labels.contains(&Label::Minus) && self.labels.contains(&Label::Plus)
    }
}
