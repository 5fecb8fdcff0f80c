//! Binomial-proportion estimators for shot-based readout.
//!
//! A readout probability `p` estimated from `R` shots behaves like a
//! Bernoulli mean. The Wald interval uses `z * sqrt(p(1-p)/R)`; the Wilson
//! score interval shrinks the estimate towards 1/2 and stays sane near 0
//! and 1. Both worst cases sit at `p = 1/2`.

use serde::Serialize;

use crate::error::{Error, Result};

/// z-value for a 99% two-sided confidence level.
pub const Z_99: f64 = 2.58;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Wald,
    Wilson,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wald" => Ok(Method::Wald),
            "wilson" => Ok(Method::Wilson),
            other => Err(Error::Argument(format!(
                "unknown interval method `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Wald => "wald",
            Method::Wilson => "wilson",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalEstimate {
    pub p_hat: f64,
    pub max_error: f64,
    pub method: Method,
    pub z: f64,
    pub shots: u64,
    /// Wald at `p_hat` in {0, 1}: the error formula collapses to zero.
    pub degenerate: bool,
}

impl IntervalEstimate {
    pub fn contains(&self, p: f64) -> bool {
        (self.p_hat - p).abs() <= self.max_error
    }
}

fn check(successes: u64, shots: u64, z: f64) -> Result<()> {
    if shots == 0 {
        return Err(Error::Argument("shot count R must be >= 1".into()));
    }
    if successes > shots {
        return Err(Error::Argument(format!(
            "{successes} successes out of {shots} shots"
        )));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Argument(format!(
            "z must be positive and finite, got {z}"
        )));
    }
    Ok(())
}

pub fn wald(successes: u64, shots: u64, z: f64) -> Result<IntervalEstimate> {
    check(successes, shots, z)?;
    let r = shots as f64;
    let p_hat = successes as f64 / r;
    let max_error = z * (p_hat * (1.0 - p_hat) / r).sqrt();
    Ok(IntervalEstimate {
        p_hat,
        max_error,
        method: Method::Wald,
        z,
        shots,
        degenerate: successes == 0 || successes == shots,
    })
}

pub fn wilson(successes: u64, shots: u64, z: f64) -> Result<IntervalEstimate> {
    check(successes, shots, z)?;
    let r = shots as f64;
    let raw = successes as f64 / r;
    let z2 = z * z;
    let shrink = 1.0 / (1.0 + z2 / r);
    let p_hat = shrink * (raw + z2 / (2.0 * r));
    let max_error = z * shrink * (raw * (1.0 - raw) / r + z2 / (4.0 * r * r)).sqrt();
    Ok(IntervalEstimate {
        p_hat,
        max_error,
        method: Method::Wilson,
        z,
        shots,
        degenerate: false,
    })
}

pub fn estimate(method: Method, successes: u64, shots: u64, z: f64) -> Result<IntervalEstimate> {
    match method {
        Method::Wald => wald(successes, shots, z),
        Method::Wilson => wilson(successes, shots, z),
    }
}

/// Error bound that holds for every `p_hat` at `shots` samples:
/// `z / (2 sqrt(R))` for Wald, `sqrt(z^2 (R + z^2) / (4 R^2))` for Wilson.
pub fn worst_case_bound(method: Method, shots: u64, z: f64) -> f64 {
    let r = shots as f64;
    match method {
        Method::Wald => z / (2.0 * r.sqrt()),
        Method::Wilson => (z * z * (r + z * z) / (4.0 * r * r)).sqrt(),
    }
}

/// Comparisons against a requested epsilon forgive one part in 10^12, so
/// that exact inversions like `(2.58 / 0.02)^2 = 16641` are not lost to
/// rounding.
fn within(bound: f64, epsilon: f64) -> bool {
    bound <= epsilon * (1.0 + 1e-12)
}

/// Smallest shot count whose worst-case bound is at most `epsilon`.
pub fn shots_for_error(epsilon: f64, z: f64, method: Method) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::Argument(format!(
            "epsilon must lie in (0, 0.5), got {epsilon}"
        )));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Argument(format!(
            "z must be positive and finite, got {z}"
        )));
    }
    // Both bounds decrease monotonically in R; bracket, then bisect.
    let mut hi: u64 = 1;
    while !within(worst_case_bound(method, hi, z), epsilon) {
        hi = hi.checked_mul(2).ok_or_else(|| {
            Error::Argument(format!("epsilon {epsilon} needs more than 2^64 shots"))
        })?;
    }
    let mut lo = hi / 2; // bound(lo) > epsilon, or lo == 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if within(worst_case_bound(method, mid, z), epsilon) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
