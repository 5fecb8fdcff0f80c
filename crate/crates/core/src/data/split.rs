use rand::seq::SliceRandom;
use rand::Rng;

use super::LabeledDataset;
use crate::error::{Error, Result};
use crate::seeding::task_rng;

/// Seeded shuffle split into `round(fraction * n)` training rows and the rest.
pub fn split(
    dataset: &LabeledDataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    split_with(dataset, train_fraction, &mut task_rng(seed, 0))
}

pub fn split_with<R: Rng + ?Sized>(
    dataset: &LabeledDataset,
    train_fraction: f64,
    rng: &mut R,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Argument(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let n = dataset.len();
    let n_train = (train_fraction * n as f64).round() as usize;
    if n_train == 0 || n_train >= n {
        return Err(Error::Argument(format!(
            "train fraction {train_fraction} on {n} rows leaves an empty side"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Ok((
        dataset.select(&order[..n_train]),
        dataset.select(&order[n_train..]),
    ))
}
