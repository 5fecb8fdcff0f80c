use num_complex::Complex64;

use super::QuantumState;
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Largest circuit `circuit_unitary` will expand into a dense matrix.
pub const MAX_UNITARY_QUBITS: usize = 10;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    dim: usize,
    data: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Unitary { dim, data }
    }

    /// Builds a matrix from rows. Panics on ragged or non-square input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Unitary {
            dim,
            data: rows.concat(),
        }
    }

    /// Real-valued convenience constructor.
    pub fn from_real(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Unitary {
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        Unitary { dim: n, data }
    }

    pub fn mul(&self, other: &Unitary) -> Unitary {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        Unitary { dim: n, data }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Unitary) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance to `other` after removing the global phase. The phase is
    /// taken from the first entry of `self` with non-negligible modulus.
    pub fn phase_distance(&self, other: &Unitary) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let Some(k) = self.data.iter().position(|a| a.norm() > 1e-9) else {
            return self.max_abs_diff(other);
        };
        let ratio = other.data[k] / self.data[k];
        if ratio.norm() < 1e-12 {
            return self.max_abs_diff(other);
        }
        let phase = ratio / ratio.norm();
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn equals_up_to_phase(&self, other: &Unitary, tol: f64) -> bool {
        self.dim == other.dim && self.phase_distance(other) <= tol
    }

    /// Deviation of `U U^dagger` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        self.mul(&self.adjoint())
            .max_abs_diff(&Unitary::identity(self.dim))
    }
}

/// Dense matrix of a circuit; column `j` is the circuit applied to basis
/// state `j`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<Unitary> {
    let n = circuit.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::Capacity {
            what: "unitary qubit count",
            value: n,
            limit: MAX_UNITARY_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for col in 0..dim {
        let mut basis = vec![Complex64::new(0.0, 0.0); dim];
        basis[col] = Complex64::new(1.0, 0.0);
        let mut state = QuantumState::from_amplitudes(basis)?;
        for op in circuit.ops() {
            state.apply(op)?;
        }
        for (row, a) in state.amplitudes().iter().enumerate() {
            data[row * dim + col] = *a;
        }
    }
    Ok(Unitary { dim, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::GateOp;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn hadamard_matrix() {
        let mut c = Circuit::new(1);
        c.push(GateOp::H(0)).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let h = FRAC_1_SQRT_2;
        let expected = Unitary::from_real(&[vec![h, h], vec![h, -h]]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn capacity_limit() {
        let c = Circuit::new(11);
        assert!(matches!(circuit_unitary(&c), Err(Error::Capacity { .. })));
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let mut c = Circuit::new(1);
        c.push(GateOp::T(0)).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let rot = Complex64::from_polar(1.0, 0.3);
        let shifted = Unitary::from_rows(&[
            vec![u.get(0, 0) * rot, u.get(0, 1) * rot],
            vec![u.get(1, 0) * rot, u.get(1, 1) * rot],
        ]);
        assert!(u.max_abs_diff(&shifted) > 0.1);
        assert!(u.equals_up_to_phase(&shifted, 1e-14));
    }
}
