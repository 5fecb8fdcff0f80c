use sha2::{Digest, Sha256};

use super::{Label, LabeledDataset};
use crate::error::{Error, Result};

/// Fisher's Iris data as distributed by the UCI repository (150 rows; the
/// UCI copy carries the two well-known transcription differences in rows
/// 35 and 38). Classes are numbered 1 = setosa, 2 = versicolor,
/// 3 = virginica.
pub const IRIS_CSV: &str = include_str!("iris.csv");

pub const IRIS_SHA256: &str = "69f6c4b1890c9dcc5983b86a52da5d11505cb623f7e6ccdd0111999054afb230";

const FEATURES: [&str; 4] = ["sepal_length", "sepal_width", "petal_length", "petal_width"];
const CLASS_NAMES: [&str; 3] = ["setosa", "versicolor", "virginica"];

/// All 150 rows as `(features, class)`, after checking the embedded checksum.
pub fn iris_raw() -> Result<Vec<([f64; 4], u8)>> {
    let digest = Sha256::digest(IRIS_CSV.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != IRIS_SHA256 {
        return Err(Error::Checksum);
    }
    let mut lines = IRIS_CSV.lines();
    let header = lines.next().unwrap_or_default();
    if header != "sepal_length,sepal_width,petal_length,petal_width,class" {
        return Err(Error::Argument(format!(
            "unexpected iris header `{header}`"
        )));
    }
    lines
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            let bad = || Error::Argument(format!("malformed iris row `{line}`"));
            if cols.len() != 5 {
                return Err(bad());
            }
            let mut features = [0.0; 4];
            for (f, text) in features.iter_mut().zip(&cols[..4]) {
                *f = text.parse().map_err(|_| bad())?;
            }
            let class = cols[4].parse().map_err(|_| bad())?;
            Ok((features, class))
        })
        .collect()
}

/// Rows of two Iris classes restricted to `features` (indices into
/// sepal length, sepal width, petal length, petal width). The first class
/// is labelled -1, the second +1. Rows keep their original order, and
/// `source_index` holds their 0-based position in the 150-row table.
pub fn iris(classes: (u8, u8), features: &[usize]) -> Result<LabeledDataset> {
    let (first, second) = classes;
    for c in [first, second] {
        if !(1..=3).contains(&c) {
            return Err(Error::Argument(format!("iris class {c} not in 1..=3")));
        }
    }
    if first == second {
        return Err(Error::Argument(format!(
            "iris classes must differ, got {first} twice"
        )));
    }
    if features.is_empty() {
        return Err(Error::Argument("empty feature subset".into()));
    }
    for (k, &f) in features.iter().enumerate() {
        if f >= FEATURES.len() || features[..k].contains(&f) {
            return Err(Error::Argument(format!(
                "invalid iris feature subset {features:?}"
            )));
        }
    }

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut source_index = Vec::new();
    for (idx, (values, class)) in iris_raw()?.into_iter().enumerate() {
        let label = if class == first {
            Label::Minus
        } else if class == second {
            Label::Plus
        } else {
            continue;
        };
        rows.push(features.iter().map(|&f| values[f]).collect());
        labels.push(label);
        source_index.push(idx);
    }
    let mut dataset = LabeledDataset::new(format!("iris {first}&{second}"), rows, labels)?;
    dataset.class_map = vec![
        (CLASS_NAMES[first as usize - 1].to_string(), Label::Minus),
        (CLASS_NAMES[second as usize - 1].to_string(), Label::Plus),
    ];
    dataset.source_index = source_index;
    Ok(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_shape() {
        let raw = iris_raw().unwrap();
        assert_eq!(raw.len(), 150);
        for class in 1..=3 {
            assert_eq!(raw.iter().filter(|(_, c)| *c == class).count(), 50);
        }
        assert_eq!(raw[0], ([5.1, 3.5, 1.4, 0.2], 1));
        assert_eq!(raw[149], ([5.9, 3.0, 5.1, 1.8], 3));
    }

    #[test]
    fn class_pair_selection() {
        let d = iris((1, 2), &[0, 1, 2, 3]).unwrap();
        assert_eq!(d.len(), 100);
        assert_eq!(d.dim(), 4);
        assert_eq!(d.labels.iter().filter(|l| **l == Label::Minus).count(), 50);
        assert_eq!(d.class_map[0].0, "setosa");

        let d = iris((3, 2), &[1]).unwrap();
        assert_eq!(d.labels[0], Label::Plus); // row 50 is versicolor
        assert_eq!(d.source_index[0], 50);
    }

    #[test]
    fn bad_requests() {
        assert!(iris((1, 1), &[0]).is_err());
        assert!(iris((0, 2), &[0]).is_err());
        assert!(iris((1, 2), &[]).is_err());
        assert!(iris((1, 2), &[0, 0]).is_err());
        assert!(iris((1, 2), &[4]).is_err());
    }
}
