//! Dense statevector simulation.
//!
//! Qubit `k` is bit `k` of the basis index, so qubit 0 is the least
//! significant bit. A state over `n` qubits holds all `2^n` amplitudes.

mod gate;
mod unitary;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier::RegisterLayout;
use crate::error::{Error, Result};

pub use gate::{hadamard, pauli_x, phase, ry, GateOp, Matrix2};
pub use unitary::{circuit_unitary, Unitary, MAX_UNITARY_QUBITS};

/// Largest register `zero_state` will allocate.
pub const MAX_QUBITS: usize = 24;

/// Norm tolerance for states handed in from outside.
const NORM_TOLERANCE: f64 = 1e-10;

/// Below this mass a postselected branch is treated as impossible.
pub const IMPOSSIBLE_BRANCH: f64 = 1e-15;

/// Shot histogram keyed by bitstring. Character `j` of a key is the outcome
/// of the `j`-th qubit in the requested list.
pub type Histogram = BTreeMap<String, u64>;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
    layout: Option<RegisterLayout>,
}

/// `|0...0>` on `n_qubits` qubits.
pub fn zero_state(n_qubits: usize) -> Result<QuantumState> {
    QuantumState::zero(n_qubits)
}

/// Applies `op` to `state` and returns the transformed state.
pub fn apply_gate(mut state: QuantumState, op: &GateOp) -> Result<QuantumState> {
    state.apply(op)?;
    Ok(state)
}

impl QuantumState {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_capacity(n_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(QuantumState {
            n_qubits,
            amplitudes,
            layout: None,
        })
    }

    /// Wraps an amplitude vector. The length must be a power of two (at least
    /// 2) and the vector must be normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Argument(format!(
                "amplitude vector length {len} is not a power of two >= 2"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_capacity(n_qubits)?;
        let norm = norm_sqr(&amplitudes).sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Normalization { norm });
        }
        Ok(QuantumState {
            n_qubits,
            amplitudes,
            layout: None,
        })
    }

    pub fn with_layout(mut self, layout: RegisterLayout) -> Result<Self> {
        if layout.total_qubits() != self.n_qubits {
            return Err(Error::Argument(format!(
                "layout needs {} qubits, state has {}",
                layout.total_qubits(),
                self.n_qubits
            )));
        }
        self.layout = Some(layout);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn layout(&self) -> Option<&RegisterLayout> {
        self.layout.as_ref()
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amplitudes).sqrt()
    }

    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        match op.controlled_form() {
            Some((controls, target, m)) => {
                let mask = controls.iter().fold(0usize, |acc, &q| acc | (1 << q));
                self.apply_controlled(mask, target, &m);
            }
            None => {
                if let GateOp::Swap(a, b) = *op {
                    self.apply_swap(a, b);
                }
            }
        }
        Ok(())
    }

    /// Applies `m` to `target` on every basis state whose bits in
    /// `control_mask` are all set.
    fn apply_controlled(&mut self, control_mask: usize, target: usize, m: &Matrix2) {
        let tbit = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & tbit != 0 || i & control_mask != control_mask {
                continue;
            }
            let j = i | tbit;
            let a0 = self.amplitudes[i];
            let a1 = self.amplitudes[j];
            self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amplitudes[j] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        let (abit, bbit) = (1usize << a, 1usize << b);
        for i in 0..self.amplitudes.len() {
            // visit each pair once, from the side with a=1, b=0
            if i & abit != 0 && i & bbit == 0 {
                let j = (i & !abit) | bbit;
                self.amplitudes.swap(i, j);
            }
        }
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::Index {
                index: qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// `(p0, p1)` for a single-qubit measurement, normalized by the total
    /// mass of the state.
    pub fn qubit_probabilities(&self, qubit: usize) -> Result<(f64, f64)> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let (mut p0, mut p1) = (0.0, 0.0);
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i & bit == 0 {
                p0 += a.norm_sqr();
            } else {
                p1 += a.norm_sqr();
            }
        }
        let total = p0 + p1;
        Ok((p0 / total, p1 / total))
    }

    /// Projects `qubit` onto `outcome` and renormalizes. Returns the projected
    /// state and the probability mass of the kept branch.
    pub fn postselect(&self, qubit: usize, outcome: bool) -> Result<(QuantumState, f64)> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let keep = |i: usize| (i & bit != 0) == outcome;
        let probability: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if probability <= IMPOSSIBLE_BRANCH {
            return Err(Error::ImpossibleBranch { probability });
        }
        let scale = 1.0 / probability.sqrt();
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if keep(i) {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let state = QuantumState {
            n_qubits: self.n_qubits,
            amplitudes,
            layout: self.layout,
        };
        Ok((state, probability))
    }

    /// Exact outcome distribution over `qubits`. Bit `j` of the returned
    /// index is the value of `qubits[j]`.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        if qubits.is_empty() {
            return Err(Error::Argument("empty qubit list".into()));
        }
        for (k, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..k].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        let mut dist = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let outcome = qubits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, &q)| acc | (((i >> q) & 1) << j));
            dist[outcome] += a.norm_sqr();
        }
        Ok(dist)
    }

    /// Draws `shots` measurements of `qubits` from a generator seeded with `seed`.
    pub fn sample_shots(&self, qubits: &[usize], shots: u64, seed: u64) -> Result<Histogram> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_shots_with(qubits, shots, &mut rng)
    }

    pub fn sample_shots_with<R: Rng + ?Sized>(
        &self,
        qubits: &[usize],
        shots: u64,
        rng: &mut R,
    ) -> Result<Histogram> {
        if shots == 0 {
            return Err(Error::Argument("shots must be >= 1".into()));
        }
        let dist = self.marginal(qubits)?;
        let sampler = WeightedIndex::new(&dist)
            .map_err(|e| Error::Argument(format!("cannot sample distribution: {e}")))?;
        let mut counts = vec![0u64; dist.len()];
        for _ in 0..shots {
            counts[sampler.sample(rng)] += 1;
        }
        let width = qubits.len();
        Ok(counts
            .into_iter()
            .enumerate()
            .filter(|&(_, n)| n > 0)
            .map(|(outcome, n)| (bitstring(outcome, width), n))
            .collect())
    }
}

fn bitstring(outcome: usize, width: usize) -> String {
    (0..width)
        .map(|j| if (outcome >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

fn check_capacity(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "qubit count",
            value: n_qubits,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}
