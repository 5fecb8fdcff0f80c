//! Circuit IR and the passes that operate on it.

mod connectivity;
mod decompose;
mod experiment;
mod qasm;

use crate::error::Result;
use crate::statevector::{GateOp, QuantumState};

pub use connectivity::{
    star_graph_ibm5, validate_connectivity, ConnectivityGraph, QubitAssignment, Violation,
};
pub use decompose::{decompose, decompose_for_device, star_toffoli, toffoli_t_depth4};
pub use experiment::{build_experiment_circuit, load_angle, Role, EXPERIMENT_QUBITS};
pub use qasm::{export_qasm, parse_qasm};

/// Marks the op index at which a named step begins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepLabel {
    pub start: usize,
    pub name: String,
}

/// Ordered gate list over `n_qubits` qubits. Every op is validated against
/// the register size when pushed.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    labels: Vec<StepLabel>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            ops: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn from_ops(n_qubits: usize, ops: impl IntoIterator<Item = GateOp>) -> Result<Self> {
        let mut circuit = Circuit::new(n_qubits);
        for op in ops {
            circuit.push(op)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    /// Starts a labelled step at the current position.
    pub fn mark(&mut self, name: impl Into<String>) {
        self.labels.push(StepLabel {
            start: self.ops.len(),
            name: name.into(),
        });
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn labels(&self) -> &[StepLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Ops belonging to the step called `name`, if it exists.
    pub fn step(&self, name: &str) -> Option<&[GateOp]> {
        let idx = self.labels.iter().position(|l| l.name == name)?;
        let start = self.labels[idx].start;
        let end = self.labels.get(idx + 1).map_or(self.ops.len(), |l| l.start);
        Some(&self.ops[start..end])
    }

    pub fn is_restricted(&self) -> bool {
        self.ops.iter().all(GateOp::is_restricted)
    }

    pub fn count(&self, name: &str) -> usize {
        self.ops.iter().filter(|op| op.name() == name).count()
    }

    /// Runs the circuit on `|0...0>`.
    pub fn simulate(&self) -> Result<QuantumState> {
        self.run_on(QuantumState::zero(self.n_qubits)?)
    }

    pub fn run_on(&self, mut state: QuantumState) -> Result<QuantumState> {
        for op in &self.ops {
            state.apply(op)?;
        }
        Ok(state)
    }
}
