use rand_distr::{Distribution, Normal};
use serde::Serialize;

use super::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::seeding::task_rng;

/// Two concentric noisy circles: outer radius 1 (label -1), inner radius
/// `radius_ratio` (label +1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CirclesParams {
    pub n_per_class: usize,
    pub radius_ratio: f64,
    pub noise_std: f64,
}

impl Default for CirclesParams {
    fn default() -> Self {
        CirclesParams {
            n_per_class: 50,
            radius_ratio: 0.5,
            noise_std: 0.05,
        }
    }
}

/// `n_per_class` evenly spaced angles on each circle plus isotropic Gaussian
/// jitter. Outer points come first.
pub fn circles(params: CirclesParams, seed: u64) -> Result<LabeledDataset> {
    let CirclesParams {
        n_per_class,
        radius_ratio,
        noise_std,
    } = params;
    if n_per_class < 2 {
        return Err(Error::Argument(format!(
            "n_per_class must be >= 2, got {n_per_class}"
        )));
    }
    if !(radius_ratio > 0.0 && radius_ratio < 1.0) {
        return Err(Error::Argument(format!(
            "radius_ratio must lie in (0, 1), got {radius_ratio}"
        )));
    }
    if !(noise_std >= 0.0 && noise_std.is_finite()) {
        return Err(Error::Argument(format!(
            "noise_std must be >= 0, got {noise_std}"
        )));
    }
    let noise = Normal::new(0.0, noise_std)
        .map_err(|_| Error::Argument(format!("noise_std must be >= 0, got {noise_std}")))?;

    let mut rng = task_rng(seed, 0);
    let mut rows = Vec::with_capacity(2 * n_per_class);
    let mut labels = Vec::with_capacity(2 * n_per_class);
    for (radius, label) in [(1.0, Label::Minus), (radius_ratio, Label::Plus)] {
        for k in 0..n_per_class {
            let angle = std::f64::consts::TAU * k as f64 / n_per_class as f64;
            let (s, c) = angle.sin_cos();
            let mut point = vec![radius * c, radius * s];
            if noise_std > 0.0 {
                for x in &mut point {
                    *x += noise.sample(&mut rng);
                }
            }
            rows.push(point);
            labels.push(label);
        }
    }
    let mut dataset = LabeledDataset::new("circles", rows, labels)?;
    dataset.class_map = vec![
        ("outer".into(), Label::Minus),
        ("inner".into(), Label::Plus),
    ];
    Ok(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_radii() {
        let d = circles(
            CirclesParams {
                noise_std: 0.0,
                ..Default::default()
            },
            4,
        )
        .unwrap();
        for (row, label) in d.rows.iter().zip(&d.labels) {
            let r = row[0].hypot(row[1]);
            let expected = if *label == Label::Minus { 1.0 } else { 0.5 };
            assert!((r - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn reproducible() {
        let p = CirclesParams::default();
        assert_eq!(circles(p, 8).unwrap(), circles(p, 8).unwrap());
        assert_ne!(circles(p, 8).unwrap().rows, circles(p, 9).unwrap().rows);
    }

    #[test]
    fn parameter_checks() {
        let p = CirclesParams::default();
        assert!(circles(
            CirclesParams {
                n_per_class: 1,
                ..p
            },
            0
        )
        .is_err());
        assert!(circles(
            CirclesParams {
                radius_ratio: 1.0,
                ..p
            },
            0
        )
        .is_err());
        assert!(circles(
            CirclesParams {
                noise_std: -0.1,
                ..p
            },
            0
        )
        .is_err());
    }
}
