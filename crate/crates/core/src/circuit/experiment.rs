//! The four-qubit, two-training-point state preparation circuit.

use super::Circuit;
use crate::encoding::ensure_unit;
use crate::error::{Error, Result};
use crate::statevector::GateOp;

pub const EXPERIMENT_QUBITS: usize = 4;

/// Named wires of the experiment circuit.
///
/// `Data` is the wire the rotations load into. Step E swaps it with `Class`,
/// so after preparation `Data` (qubit 0) holds the class bit and `Class`
/// (qubit 1) holds the data bit. That matches the register layout of the
/// prepared state: class in qubit 0, data in qubit 1, ancilla in qubit 2,
/// index in qubit 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Ancilla,
    Index,
    Data,
    Class,
}

impl Role {
    pub fn logical(self) -> usize {
        match self {
            Role::Data => 0,
            Role::Class => 1,
            Role::Ancilla => 2,
            Role::Index => 3,
        }
    }
}

/// `Ry` angle that takes `|0>` to `v[0]|0> + v[1]|1>` for a unit 2-vector.
pub fn load_angle(v: &[f64]) -> f64 {
    2.0 * v[1].atan2(v[0])
}

fn check_pair(v: &[f64]) -> Result<()> {
    if v.len() != 2 {
        return Err(Error::Argument(format!(
            "expected a 2-vector, got dimension {}",
            v.len()
        )));
    }
    ensure_unit(v)
}

/// Circuit whose output on `|0000>` is the classifier input state for the
/// training set `{(x0, -1), (x1, +1)}` and new input `x_tilde`.
///
/// Steps: A puts ancilla and index in superposition; B loads `x_tilde` under
/// ancilla = 1 and flips the ancilla so it sits in the ancilla = 0 branch;
/// C loads `x0` into the ancilla = 1 branch (a Toffoli when `x0 = (0, 1)`,
/// else a doubly controlled rotation) and flips the index; D loads `x1`
/// under ancilla = 1, index = 1; E swaps data and class wires and sets the
/// class bit from the index.
pub fn build_experiment_circuit(x_tilde: &[f64], x0: &[f64], x1: &[f64]) -> Result<Circuit> {
    check_pair(x_tilde)?;
    check_pair(x0)?;
    check_pair(x1)?;

    let a = Role::Ancilla.logical();
    let m = Role::Index.logical();
    let i = Role::Data.logical();
    let c = Role::Class.logical();

    let mut circuit = Circuit::new(EXPERIMENT_QUBITS);
    circuit.mark("A");
    circuit.push(GateOp::H(a))?;
    circuit.push(GateOp::H(m))?;

    circuit.mark("B");
    circuit.push(GateOp::CRy {
        control: a,
        target: i,
        theta: load_angle(x_tilde),
    })?;
    circuit.push(GateOp::X(a))?;

    circuit.mark("C");
    if x0[0] == 0.0 && x0[1] > 0.0 {
        circuit.push(GateOp::Toffoli {
            controls: [a, m],
            target: i,
        })?;
    } else {
        circuit.push(GateOp::CCRy {
            controls: [a, m],
            target: i,
            theta: load_angle(x0),
        })?;
    }
    circuit.push(GateOp::X(m))?;

    circuit.mark("D");
    circuit.push(GateOp::CCRy {
        controls: [a, m],
        target: i,
        theta: load_angle(x1),
    })?;

    circuit.mark("E");
    circuit.push(GateOp::Swap(i, c))?;
    circuit.push(GateOp::Cnot {
        control: m,
        target: i,
    })?;
    Ok(circuit)
}
