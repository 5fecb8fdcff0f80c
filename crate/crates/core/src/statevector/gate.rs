use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// 2x2 complex matrix, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

/// One gate application over indexed qubits.
///
/// The restricted set `{H, X, T, Tdg, S, Ry, CNOT}` is what the compiler
/// lowers to; `SWAP`, `Toffoli`, `CRy` and `CCRy` only appear before
/// decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    H(usize),
    X(usize),
    T(usize),
    Tdg(usize),
    S(usize),
    Ry {
        target: usize,
        theta: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Swap(usize, usize),
    Toffoli {
        controls: [usize; 2],
        target: usize,
    },
    CRy {
        control: usize,
        target: usize,
        theta: f64,
    },
    CCRy {
        controls: [usize; 2],
        target: usize,
        theta: f64,
    },
}

impl GateOp {
    pub fn name(&self) -> &'static str {
        match self {
            GateOp::H(_) => "h",
            GateOp::X(_) => "x",
            GateOp::T(_) => "t",
            GateOp::Tdg(_) => "tdg",
            GateOp::S(_) => "s",
            GateOp::Ry { .. } => "ry",
            GateOp::Cnot { .. } => "cx",
            GateOp::Swap(..) => "swap",
            GateOp::Toffoli { .. } => "ccx",
            GateOp::CRy { .. } => "cry",
            GateOp::CCRy { .. } => "ccry",
        }
    }

    /// Qubits touched by the gate, controls first and target last.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::H(q) | GateOp::X(q) | GateOp::T(q) | GateOp::Tdg(q) | GateOp::S(q) => vec![q],
            GateOp::Ry { target, .. } => vec![target],
            GateOp::Cnot { control, target }
            | GateOp::CRy {
                control, target, ..
            } => {
                vec![control, target]
            }
            GateOp::Swap(a, b) => vec![a, b],
            GateOp::Toffoli { controls, target }
            | GateOp::CCRy {
                controls, target, ..
            } => {
                vec![controls[0], controls[1], target]
            }
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateOp::Ry { theta, .. } | GateOp::CRy { theta, .. } | GateOp::CCRy { theta, .. } => {
                Some(theta)
            }
            _ => None,
        }
    }

    /// True for gates in the hardware gate set.
    pub fn is_restricted(&self) -> bool {
        matches!(
            self,
            GateOp::H(_)
                | GateOp::X(_)
                | GateOp::T(_)
                | GateOp::Tdg(_)
                | GateOp::S(_)
                | GateOp::Ry { .. }
                | GateOp::Cnot { .. }
        )
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(
            self,
            GateOp::Cnot { .. } | GateOp::Swap(..) | GateOp::CRy { .. }
        )
    }

    /// Checks index range, distinctness and angle finiteness.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for (i, &q) in qubits.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::Index { index: q, n_qubits });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        if let Some(theta) = self.angle() {
            if !theta.is_finite() {
                return Err(Error::NonFiniteAngle(theta));
            }
        }
        Ok(())
    }

    /// Same gate with every qubit index passed through `f`.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> GateOp {
        match *self {
            GateOp::H(q) => GateOp::H(f(q)),
            GateOp::X(q) => GateOp::X(f(q)),
            GateOp::T(q) => GateOp::T(f(q)),
            GateOp::Tdg(q) => GateOp::Tdg(f(q)),
            GateOp::S(q) => GateOp::S(f(q)),
            GateOp::Ry { target, theta } => GateOp::Ry {
                target: f(target),
                theta,
            },
            GateOp::Cnot { control, target } => GateOp::Cnot {
                control: f(control),
                target: f(target),
            },
            GateOp::Swap(a, b) => GateOp::Swap(f(a), f(b)),
            GateOp::Toffoli { controls, target } => GateOp::Toffoli {
                controls: [f(controls[0]), f(controls[1])],
                target: f(target),
            },
            GateOp::CRy {
                control,
                target,
                theta,
            } => GateOp::CRy {
                control: f(control),
                target: f(target),
                theta,
            },
            GateOp::CCRy {
                controls,
                target,
                theta,
            } => GateOp::CCRy {
                controls: [f(controls[0]), f(controls[1])],
                target: f(target),
                theta,
            },
        }
    }

    /// Splits the gate into (control qubits, target, single-qubit matrix).
    /// `None` for SWAP, which is not a controlled single-qubit unitary.
    pub(crate) fn controlled_form(&self) -> Option<(Vec<usize>, usize, Matrix2)> {
        let form = match *self {
            GateOp::H(q) => (vec![], q, hadamard()),
            GateOp::X(q) => (vec![], q, pauli_x()),
            GateOp::T(q) => (vec![], q, phase(std::f64::consts::FRAC_PI_4)),
            GateOp::Tdg(q) => (vec![], q, phase(-std::f64::consts::FRAC_PI_4)),
            GateOp::S(q) => (vec![], q, phase(std::f64::consts::FRAC_PI_2)),
            GateOp::Ry { target, theta } => (vec![], target, ry(theta)),
            GateOp::Cnot { control, target } => (vec![control], target, pauli_x()),
            GateOp::Toffoli { controls, target } => (controls.to_vec(), target, pauli_x()),
            GateOp::CRy {
                control,
                target,
                theta,
            } => (vec![control], target, ry(theta)),
            GateOp::CCRy {
                controls,
                target,
                theta,
            } => (controls.to_vec(), target, ry(theta)),
            GateOp::Swap(..) => return None,
        };
        Some(form)
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(theta) = self.angle() {
            write!(f, "({theta})")?;
        }
        let qubits: Vec<String> = self.qubits().iter().map(|q| format!("q{q}")).collect();
        write!(f, " {}", qubits.join(","))
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn hadamard() -> Matrix2 {
    [
        [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)],
        [c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)],
    ]
}

pub fn pauli_x() -> Matrix2 {
    [[c(0.0), c(1.0)], [c(1.0), c(0.0)]]
}

/// diag(1, e^{i phi})
pub fn phase(phi: f64) -> Matrix2 {
    [[c(1.0), c(0.0)], [c(0.0), Complex64::from_polar(1.0, phi)]]
}

/// Real rotation with `ry(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>`.
pub fn ry(theta: f64) -> Matrix2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co), c(-s)], [c(s), c(co)]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_bad_ops() {
        assert_eq!(
            GateOp::H(3).validate(3),
            Err(Error::Index {
                index: 3,
                n_qubits: 3
            })
        );
        assert_eq!(
            GateOp::Cnot {
                control: 1,
                target: 1
            }
            .validate(2),
            Err(Error::DuplicateQubit(1))
        );
        assert!(matches!(
            GateOp::Ry {
                target: 0,
                theta: f64::NAN
            }
            .validate(1),
            Err(Error::NonFiniteAngle(_))
        ));
        assert!(GateOp::Toffoli {
            controls: [0, 1],
            target: 2
        }
        .validate(3)
        .is_ok());
    }

    #[test]
    fn restricted_set_membership() {
        assert!(GateOp::Tdg(0).is_restricted());
        assert!(GateOp::Cnot {
            control: 0,
            target: 1
        }
        .is_restricted());
        assert!(!GateOp::Swap(0, 1).is_restricted());
        assert!(!GateOp::CCRy {
            controls: [0, 1],
            target: 2,
            theta: 0.1
        }
        .is_restricted());
    }

    #[test]
    fn remap_preserves_angle() {
        let op = GateOp::CRy {
            control: 0,
            target: 1,
            theta: 0.5,
        };
        assert_eq!(
            op.remap(|q| q + 2),
            GateOp::CRy {
                control: 2,
                target: 3,
                theta: 0.5
            }
        );
    }
}
