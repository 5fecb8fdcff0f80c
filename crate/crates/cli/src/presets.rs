//! The two-point Iris training set and the two test inputs, as printed to
//! three decimals and rescaled to unit length.

use qdist_core::classifier::TrainingSet;
use qdist_core::data::Label;

use crate::CliError;

pub const X0: [f64; 2] = [0.0, 1.0];
pub const X1_PRINTED: [f64; 2] = [0.789, 0.615];
pub const XPRIME_PRINTED: [f64; 2] = [-0.549, 0.836];
pub const XDOUBLEPRIME_PRINTED: [f64; 2] = [0.053, 0.999];

fn unit(v: [f64; 2]) -> Vec<f64> {
    let n = v[0].hypot(v[1]);
    vec![v[0] / n, v[1] / n]
}

pub fn x0() -> Vec<f64> {
    X0.to_vec()
}

pub fn x1() -> Vec<f64> {
    unit(X1_PRINTED)
}

pub fn training_set() -> TrainingSet {
    TrainingSet::new(vec![x0(), x1()], vec![Label::Minus, Label::Plus])
        .expect("preset training vectors are unit length")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Xprime,
    Xdoubleprime,
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::Xprime, Preset::Xdoubleprime];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Xprime => "xprime",
            Preset::Xdoubleprime => "xdoubleprime",
        }
    }

    pub fn vector(self) -> Vec<f64> {
        match self {
            Preset::Xprime => unit(XPRIME_PRINTED),
            Preset::Xdoubleprime => unit(XDOUBLEPRIME_PRINTED),
        }
    }
}

/// Parses `a,b,...` and rescales to unit length.
pub fn parse_input(text: &str, dim: usize) -> Result<Vec<f64>, CliError> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("malformed vector `{text}`")))?;
    if values.len() != dim {
        return Err(CliError::Usage(format!(
            "expected {dim} components, got {} in `{text}`",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Usage(format!("non-finite component in `{text}`")));
    }
    qdist_core::encoding::normalize(&values)
        .map_err(|e| CliError::Usage(format!("cannot encode `{text}`: {e}")))
}
