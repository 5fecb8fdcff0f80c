use std::collections::{BTreeMap, BTreeSet};

use super::{Circuit, Role};
use crate::error::{Error, Result};
use crate::statevector::GateOp;

/// Undirected coupling map between physical qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityGraph {
    n_physical: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ConnectivityGraph {
    pub fn new(n_physical: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n_physical || b >= n_physical {
                return Err(Error::Index {
                    index: a.max(b),
                    n_qubits: n_physical,
                });
            }
            if a == b {
                return Err(Error::Argument(format!("self-loop on physical qubit {a}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(ConnectivityGraph {
            n_physical,
            edges: set,
        })
    }

    pub fn n_physical(&self) -> usize {
        self.n_physical
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, q: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == q || b == q)
            .count()
    }
}

/// Five physical qubits with Q2 coupled to each of Q0, Q1, Q3, Q4 and no
/// other couplings.
pub fn star_graph_ibm5() -> ConnectivityGraph {
    ConnectivityGraph::new(5, [(0, 2), (1, 2), (3, 2), (4, 2)]).expect("static star graph")
}

/// Logical-to-physical qubit placement. Injective.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QubitAssignment {
    map: BTreeMap<usize, usize>,
}

impl QubitAssignment {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut used = BTreeSet::new();
        for (logical, physical) in pairs {
            if !used.insert(physical) {
                return Err(Error::Argument(format!(
                    "physical qubit {physical} assigned twice"
                )));
            }
            if map.insert(logical, physical).is_some() {
                return Err(Error::Argument(format!(
                    "logical qubit {logical} assigned twice"
                )));
            }
        }
        Ok(QubitAssignment { map })
    }

    /// Placement of the experiment circuit's registers by role.
    pub fn from_roles(pairs: impl IntoIterator<Item = (Role, usize)>) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(role, p)| (role.logical(), p)))
    }

    /// The hand placement used for the experiment: data on the star center.
    pub fn experiment_on_star() -> Self {
        Self::from_roles([
            (Role::Ancilla, 0),
            (Role::Index, 1),
            (Role::Data, 2),
            (Role::Class, 3),
        ])
        .expect("static assignment")
    }

    pub fn physical(&self, logical: usize) -> Option<usize> {
        self.map.get(&logical).copied()
    }
}

/// A CNOT that has no coupling under the assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub op_index: usize,
    pub control: usize,
    pub target: usize,
    pub physical: (usize, usize),
}

/// Lists every CNOT whose physical qubits are not coupled. The circuit must
/// already be decomposed.
pub fn validate_connectivity(
    circuit: &Circuit,
    graph: &ConnectivityGraph,
    assignment: &QubitAssignment,
) -> Result<Vec<Violation>> {
    let mut used = BTreeSet::new();
    for op in circuit.ops() {
        if !op.is_restricted() {
            return Err(Error::UnsupportedGate(op.name().to_string()));
        }
        used.extend(op.qubits());
    }
    for &q in &used {
        match assignment.physical(q) {
            None => return Err(Error::Assignment(q)),
            Some(p) if p >= graph.n_physical() => {
                return Err(Error::Index {
                    index: p,
                    n_qubits: graph.n_physical(),
                })
            }
            Some(_) => {}
        }
    }
    let mut violations = Vec::new();
    for (op_index, op) in circuit.ops().iter().enumerate() {
        if let GateOp::Cnot { control, target } = *op {
            let pc = assignment.physical(control).expect("checked above");
            let pt = assignment.physical(target).expect("checked above");
            if !graph.has_edge(pc, pt) {
                violations.push(Violation {
                    op_index,
                    control,
                    target,
                    physical: (pc, pt),
                });
            }
        }
    }
    Ok(violations)
}
