//! Statevector simulation and a distance-based quantum interference
//! classifier, with the compiler passes, shot statistics and benchmark
//! harness around it.
//!
//! Qubit `k` is bit `k` of a basis index throughout.

pub mod circuit;
pub mod classifier;
pub mod data;
pub mod encoding;
pub mod error;
pub mod seeding;
pub mod statevector;
pub mod stats;

pub use error::{Error, Result};
