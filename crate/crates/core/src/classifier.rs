//! Distance-based interference classifier.
//!
//! The training set and the new input are amplitude-encoded into one state,
//!
//! ```text
//! |D> = 1/sqrt(2M) sum_m |m> (|0>|x~> + |1>|x^m>) |y^m>
//! ```
//!
//! A Hadamard on the ancilla interferes the copies of `x~` with each `x^m`.
//! Keeping the ancilla = 0 branch leaves amplitudes proportional to
//! `x~ + x^m`, and the class qubit then reads out the kernel-weighted vote.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::Serialize;

use crate::data::Label;
use crate::encoding::ensure_unit;
use crate::error::{Error, Result};
use crate::seeding::task_rng;
use crate::statevector::{GateOp, QuantumState, MAX_QUBITS};
use num_complex::Complex64;

/// Qubit layout of the classifier state, least significant first: class
/// bit, data register, ancilla, index register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegisterLayout {
    pub m_bits: usize,
    pub i_bits: usize,
}

fn bits_for(count: usize) -> usize {
    count.next_power_of_two().trailing_zeros() as usize
}

impl RegisterLayout {
    /// Layout for `m` training points of dimension `n`.
    pub fn for_problem(m: usize, n: usize) -> Self {
        RegisterLayout {
            m_bits: bits_for(m),
            i_bits: bits_for(n),
        }
    }

    pub fn total_qubits(&self) -> usize {
        self.m_bits + self.i_bits + 2
    }

    pub fn class_qubit(&self) -> usize {
        0
    }

    pub fn data_qubits(&self) -> std::ops::Range<usize> {
        1..1 + self.i_bits
    }

    pub fn ancilla_qubit(&self) -> usize {
        1 + self.i_bits
    }

    pub fn index_qubits(&self) -> std::ops::Range<usize> {
        2 + self.i_bits..self.total_qubits()
    }

    /// Basis index of `|m>|a>|i>|c>`.
    pub fn basis_index(&self, m: usize, ancilla: bool, i: usize, class: bool) -> usize {
        usize::from(class)
            | (i << 1)
            | (usize::from(ancilla) << (1 + self.i_bits))
            | (m << (2 + self.i_bits))
    }
}

/// Unit-norm training vectors with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    vectors: Vec<Vec<f64>>,
    labels: Vec<Label>,
}

impl TrainingSet {
    pub fn new(vectors: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Argument("training set is empty".into()));
        }
        if vectors.len() != labels.len() {
            return Err(Error::Argument(format!(
                "{} vectors but {} labels",
                vectors.len(),
                labels.len()
            )));
        }
        let dim = vectors[0].len();
        if dim == 0 {
            return Err(Error::Argument("zero-dimensional feature vectors".into()));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::Argument(
                    "training vectors differ in dimension".into(),
                ));
            }
            ensure_unit(v)?;
        }
        Ok(TrainingSet { vectors, labels })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn layout(&self) -> RegisterLayout {
        RegisterLayout::for_problem(self.len(), self.dim())
    }

    fn check_input(&self, x_tilde: &[f64]) -> Result<()> {
        if x_tilde.len() != self.dim() {
            return Err(Error::Argument(format!(
                "input dimension {} does not match training dimension {}",
                x_tilde.len(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Readout of one classification, exact or estimated from shots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassificationOutcome {
    pub p_acc: f64,
    /// Probability of class qubit 0 (label -1) given acceptance.
    pub p_class_minus: f64,
    pub p_class_plus: f64,
    pub predicted: Label,
    /// `None` for exact readout.
    pub shots: Option<u64>,
    pub accepted: Option<u64>,
}

/// Majority vote; a tie goes to +1.
pub fn decide(p_class_minus: f64) -> Label {
    if p_class_minus > 0.5 {
        Label::Minus
    } else {
        Label::Plus
    }
}

/// Builds the classifier input state for `train` and the new point `x_tilde`.
/// Index values `m >= M` (when `M` is not a power of two) and data entries
/// past `N` carry zero amplitude.
pub fn prepare_state(train: &TrainingSet, x_tilde: &[f64]) -> Result<QuantumState> {
    train.check_input(x_tilde)?;
    ensure_unit(x_tilde)?;
    let layout = train.layout();
    if layout.total_qubits() > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "classifier register",
            value: layout.total_qubits(),
            limit: MAX_QUBITS,
        });
    }
    let weight = 1.0 / (2.0 * train.len() as f64).sqrt();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << layout.total_qubits()];
    for (m, (x, label)) in train.vectors.iter().zip(&train.labels).enumerate() {
        let class = *label == Label::Plus;
        for i in 0..x.len() {
            amplitudes[layout.basis_index(m, false, i, class)] =
                Complex64::new(weight * x_tilde[i], 0.0);
            amplitudes[layout.basis_index(m, true, i, class)] = Complex64::new(weight * x[i], 0.0);
        }
    }
    QuantumState::from_amplitudes(amplitudes)?.with_layout(layout)
}

fn layout_of(state: &QuantumState) -> Result<RegisterLayout> {
    state
        .layout()
        .copied()
        .ok_or_else(|| Error::Argument("state carries no classifier register layout".into()))
}

/// Hadamard on the ancilla, postselection on ancilla = 0, exact class readout.
pub fn interfere_and_read(state: &QuantumState) -> Result<ClassificationOutcome> {
    let layout = layout_of(state)?;
    let mut interfered = state.clone();
    interfered.apply(&GateOp::H(layout.ancilla_qubit()))?;
    let (accepted, p_acc) = interfered.postselect(layout.ancilla_qubit(), false)?;
    let (p_class_minus, p_class_plus) = accepted.qubit_probabilities(layout.class_qubit())?;
    Ok(ClassificationOutcome {
        p_acc,
        p_class_minus,
        p_class_plus,
        predicted: decide(p_class_minus),
        shots: None,
        accepted: None,
    })
}

/// Shot-by-shot version of [`interfere_and_read`]: every shot measures the
/// ancilla, and accepted shots (ancilla = 0) also measure the class qubit.
pub fn interfere_and_sample(
    state: &QuantumState,
    shots: u64,
    seed: u64,
) -> Result<ClassificationOutcome> {
    if shots == 0 {
        return Err(Error::Argument("shots must be >= 1".into()));
    }
    let layout = layout_of(state)?;
    let mut interfered = state.clone();
    interfered.apply(&GateOp::H(layout.ancilla_qubit()))?;
    // joint distribution, bit 0 = ancilla, bit 1 = class
    let joint = interfered.marginal(&[layout.ancilla_qubit(), layout.class_qubit()])?;
    let sampler = WeightedIndex::new(&joint)
        .map_err(|e| Error::Argument(format!("cannot sample readout: {e}")))?;
    let mut rng = task_rng(seed, 0);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        counts[sampler.sample(&mut rng)] += 1;
    }
    let accepted = counts[0b00] + counts[0b10];
    if accepted == 0 {
        return Err(Error::EstimationFailed { accepted, shots });
    }
    let p_class_minus = counts[0b00] as f64 / accepted as f64;
    Ok(ClassificationOutcome {
        p_acc: accepted as f64 / shots as f64,
        p_class_minus,
        p_class_plus: 1.0 - p_class_minus,
        predicted: decide(p_class_minus),
        shots: Some(shots),
        accepted: Some(accepted),
    })
}

fn squared_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum()
}

/// `1 - |x - x'|^2 / (4M)`.
pub fn kernel(x: &[f64], x_prime: &[f64], m: usize) -> Result<f64> {
    if x.len() != x_prime.len() {
        return Err(Error::Argument(format!(
            "kernel arguments differ in dimension ({} vs {})",
            x.len(),
            x_prime.len()
        )));
    }
    if m == 0 {
        return Err(Error::Argument("M must be >= 1".into()));
    }
    Ok(1.0 - squared_distance(x, x_prime) / (4.0 * m as f64))
}

/// Classical kernel vote `sum_m y^m kernel(x~, x^m, M)` and its sign (a zero
/// score is labelled +1).
pub fn classical_classify(train: &TrainingSet, x_tilde: &[f64]) -> Result<(f64, Label)> {
    train.check_input(x_tilde)?;
    ensure_unit(x_tilde)?;
    let m = train.len();
    let mut score = 0.0;
    for (x, label) in train.vectors.iter().zip(&train.labels) {
        score += label.sign() * kernel(x_tilde, x, m)?;
    }
    let label = if score < 0.0 {
        Label::Minus
    } else {
        Label::Plus
    };
    Ok((score, label))
}

/// Vote with the kernel `1 - |x - x'|^2 / 4`, which is what the readout
/// computes for any class balance: `p_class_plus - p_class_minus` equals
/// this score divided by `M * p_acc`. It agrees in sign with
/// [`classical_classify`] when `M = 1` or both labels occur equally often.
pub fn interference_score(train: &TrainingSet, x_tilde: &[f64]) -> Result<f64> {
    train.check_input(x_tilde)?;
    Ok(train
        .vectors
        .iter()
        .zip(&train.labels)
        .map(|(x, label)| label.sign() * (1.0 - squared_distance(x_tilde, x) / 4.0))
        .sum())
}

/// Closed-form acceptance probability `sum_m |x~ + x^m|^2 / (4M)`.
pub fn acceptance_probability(train: &TrainingSet, x_tilde: &[f64]) -> Result<f64> {
    train.check_input(x_tilde)?;
    let total: f64 = train
        .vectors
        .iter()
        .map(|x| {
            x.iter()
                .zip(x_tilde)
                .map(|(a, b)| (a + b).powi(2))
                .sum::<f64>()
        })
        .sum();
    Ok(total / (4.0 * train.len() as f64))
}

/// Exact quantum readout for every row of `inputs`, run in parallel.
pub fn classify_all(
    train: &TrainingSet,
    inputs: &[Vec<f64>],
) -> Vec<Result<ClassificationOutcome>> {
    use rayon::prelude::*;
    inputs
        .par_iter()
        .map(|x| prepare_state(train, x).and_then(|s| interfere_and_read(&s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(v: [f64; 2]) -> Vec<f64> {
        let n = v[0].hypot(v[1]);
        vec![v[0] / n, v[1] / n]
    }

    fn iris_pair() -> TrainingSet {
        TrainingSet::new(
            vec![vec![0.0, 1.0], unit([0.789, 0.615])],
            vec![Label::Minus, Label::Plus],
        )
        .unwrap()
    }

    #[test]
    fn layout_bits() {
        let l = RegisterLayout::for_problem(3, 2);
        assert_eq!((l.m_bits, l.i_bits, l.total_qubits()), (2, 1, 5));
        let l = RegisterLayout::for_problem(1, 1);
        assert_eq!((l.m_bits, l.i_bits, l.total_qubits()), (0, 0, 2));
        let l = RegisterLayout::for_problem(2, 2);
        assert_eq!(l.ancilla_qubit(), 2);
        assert_eq!(l.index_qubits(), 3..4);
        assert_eq!(l.basis_index(1, true, 1, false), 0b1110);
    }

    #[test]
    fn single_identical_point_state() {
        let train = TrainingSet::new(vec![vec![1.0, 0.0]], vec![Label::Minus]).unwrap();
        let s = prepare_state(&train, &[1.0, 0.0]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let l = train.layout();
        for (idx, a) in s.amplitudes().iter().enumerate() {
            let expected = if idx == l.basis_index(0, false, 0, false)
                || idx == l.basis_index(0, true, 0, false)
            {
                h
            } else {
                0.0
            };
            assert!((a.re - expected).abs() < 1e-15 && a.im == 0.0);
        }
        let out = interfere_and_read(&s).unwrap();
        assert!((out.p_acc - 1.0).abs() < 1e-12);
        assert!((out.p_class_minus - 1.0).abs() < 1e-12);
        assert_eq!(out.predicted, Label::Minus);
    }

    #[test]
    fn unused_index_branch_is_empty() {
        let v = vec![1.0, 0.0];
        let train = TrainingSet::new(
            vec![v.clone(), v.clone(), v.clone()],
            vec![Label::Minus, Label::Plus, Label::Minus],
        )
        .unwrap();
        let s = prepare_state(&train, &v).unwrap();
        let l = train.layout();
        assert_eq!(l.m_bits, 2);
        for a in [false, true] {
            for i in 0..2 {
                for c in [false, true] {
                    assert_eq!(s.amplitudes()[l.basis_index(3, a, i, c)].norm(), 0.0);
                }
            }
        }
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn table_one_theoretical_values() {
        let train = iris_pair();
        let out =
            interfere_and_read(&prepare_state(&train, &unit([-0.549, 0.836])).unwrap()).unwrap();
        assert!((out.p_acc - 0.729).abs() < 1e-3, "{}", out.p_acc);
        assert!(
            (out.p_class_minus - 0.629).abs() < 1e-3,
            "{}",
            out.p_class_minus
        );
        assert_eq!(out.predicted, Label::Minus);

        let out =
            interfere_and_read(&prepare_state(&train, &unit([0.053, 0.999])).unwrap()).unwrap();
        assert!((out.p_acc - 0.913).abs() < 1e-3, "{}", out.p_acc);
        assert!(
            (out.p_class_minus - 0.547).abs() < 1e-3,
            "{}",
            out.p_class_minus
        );
        assert_eq!(out.predicted, Label::Minus);
    }

    #[test]
    fn antipodal_input_is_impossible_branch() {
        let train = TrainingSet::new(vec![vec![0.6, 0.8]], vec![Label::Minus]).unwrap();
        let s = prepare_state(&train, &[-0.6, -0.8]).unwrap();
        assert!(matches!(
            interfere_and_read(&s),
            Err(Error::ImpossibleBranch { .. })
        ));
        assert!(matches!(
            interfere_and_sample(&s, 1, 0),
            Err(Error::EstimationFailed {
                accepted: 0,
                shots: 1
            })
        ));
    }

    #[test]
    fn sampling_deterministic_state_is_exact() {
        let train = TrainingSet::new(vec![vec![1.0, 0.0]], vec![Label::Minus]).unwrap();
        let s = prepare_state(&train, &[1.0, 0.0]).unwrap();
        let out = interfere_and_sample(&s, 777, 5).unwrap();
        assert_eq!(out.p_acc, 1.0);
        assert_eq!(out.p_class_minus, 1.0);
        assert_eq!(out.accepted, Some(777));
    }

    #[test]
    fn kernel_values() {
        let x = unit([0.3, -0.7]);
        assert_eq!(kernel(&x, &x, 3).unwrap(), 1.0);
        assert!((kernel(&[1.0, 0.0], &[-1.0, 0.0], 1).unwrap()).abs() < 1e-15);
        // squared distance from x~' to x1 is 1.839 with the printed vectors
        let k = kernel(&[-0.549, 0.836], &[0.789, 0.615], 2).unwrap();
        assert!((k - (1.0 - 1.839085 / 8.0)).abs() < 1e-12);
        assert!((k - 0.770).abs() < 1e-3);
        assert!(kernel(&[1.0], &[1.0, 0.0], 1).is_err());
    }

    #[test]
    fn classical_vote_for_first_input() {
        let (score, label) = classical_classify(&iris_pair(), &unit([-0.549, 0.836])).unwrap();
        assert!((score - -0.189).abs() < 1e-3, "{score}");
        assert_eq!(label, Label::Minus);
    }

    #[test]
    fn single_class_training_votes_minus() {
        let train = TrainingSet::new(
            vec![unit([1.0, 0.2]), unit([0.1, 1.0])],
            vec![Label::Minus, Label::Minus],
        )
        .unwrap();
        assert_eq!(
            classical_classify(&train, &unit([0.5, 0.5])).unwrap().1,
            Label::Minus
        );
    }

    #[test]
    fn tie_goes_to_plus() {
        let train = TrainingSet::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![Label::Minus, Label::Plus],
        )
        .unwrap();
        let x = unit([1.0, 1.0]);
        let (score, label) = classical_classify(&train, &x).unwrap();
        assert!(score.abs() < 1e-15);
        assert_eq!(label, Label::Plus);
        assert_eq!(decide(0.5), Label::Plus);
    }

    #[test]
    fn readout_tracks_interference_score_for_any_balance() {
        // two +1 points antipodal to the input, one -1 point near it
        let train = TrainingSet::new(
            vec![vec![-1.0, 0.0], vec![-1.0, 0.0], unit([0.2, 1.0])],
            vec![Label::Plus, Label::Plus, Label::Minus],
        )
        .unwrap();
        let x = vec![1.0, 0.0];
        let out = interfere_and_read(&prepare_state(&train, &x).unwrap()).unwrap();
        let score = interference_score(&train, &x).unwrap();
        let m = train.len() as f64;
        assert!(((out.p_class_plus - out.p_class_minus) - score / (m * out.p_acc)).abs() < 1e-12);
        // here the 1/(4M) kernel votes the other way
        let (eq1, _) = classical_classify(&train, &x).unwrap();
        assert!(eq1 > 0.0 && score < 0.0);
        assert_eq!(out.predicted, Label::Minus);
    }

    #[test]
    fn input_validation() {
        let train = iris_pair();
        assert!(matches!(
            prepare_state(&train, &[1.0, 0.0, 0.0]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            prepare_state(&train, &[1.0, 1.0]),
            Err(Error::Normalization { .. })
        ));
        assert!(matches!(
            TrainingSet::new(vec![vec![2.0, 0.0]], vec![Label::Plus]),
            Err(Error::Normalization { .. })
        ));
        let bare = QuantumState::zero(2).unwrap();
        assert!(matches!(interfere_and_read(&bare), Err(Error::Argument(_))));
    }
}
