//! Lowering of SWAP, Toffoli and controlled rotations to
//! `{H, X, T, Tdg, S, Ry, CNOT}`.

use super::{Circuit, ConnectivityGraph, QubitAssignment};
use crate::error::Result;
use crate::statevector::GateOp;

fn cx(control: usize, target: usize) -> GateOp {
    GateOp::Cnot { control, target }
}

fn ry(target: usize, theta: f64) -> GateOp {
    GateOp::Ry { target, theta }
}

/// SWAP as three CNOTs with the middle one reversed by Hadamards.
fn swap(a: usize, b: usize) -> Vec<GateOp> {
    vec![
        cx(a, b),
        GateOp::H(a),
        GateOp::H(b),
        cx(a, b),
        GateOp::H(a),
        GateOp::H(b),
        cx(a, b),
    ]
}

/// Toffoli with ten single-qubit gates and six CNOTs, T-depth four. The
/// controls are coupled directly by two of the CNOTs.
pub fn toffoli_t_depth4(c1: usize, c2: usize, t: usize) -> Vec<GateOp> {
    vec![
        GateOp::H(t),
        cx(c2, t),
        GateOp::Tdg(t),
        cx(c1, t),
        GateOp::T(t),
        cx(c2, t),
        GateOp::Tdg(c2),
        GateOp::Tdg(t),
        cx(c1, t),
        cx(c1, c2),
        GateOp::T(c1),
        GateOp::Tdg(c2),
        GateOp::T(t),
        cx(c1, c2),
        GateOp::S(c2),
        GateOp::H(t),
    ]
}

/// Toffoli whose CNOTs only couple the target to each control, for devices
/// where the controls are not adjacent. Eight CNOTs walk the target and the
/// second control through all seven parities of the three inputs; each
/// parity gets a T or Tdg, which assembles the CCZ phase.
pub fn star_toffoli(c1: usize, c2: usize, t: usize) -> Vec<GateOp> {
    vec![
        GateOp::H(t),
        GateOp::T(c1),
        GateOp::T(c2),
        GateOp::T(t),
        cx(c1, t), // t = x1^x3
        GateOp::Tdg(t),
        cx(t, c2), // c2 = x1^x2^x3
        GateOp::T(c2),
        cx(c1, t), // t = x3
        cx(t, c2), // c2 = x1^x2
        GateOp::Tdg(c2),
        cx(c1, t), // t = x1^x3
        cx(t, c2), // c2 = x2^x3
        GateOp::Tdg(c2),
        cx(c1, t), // t = x3
        cx(t, c2), // c2 = x2
        GateOp::H(t),
    ]
}

/// `CRy(theta)` as CNOT, `Ry(-theta/2)`, CNOT, `Ry(theta/2)`.
fn controlled_ry(control: usize, target: usize, theta: f64) -> Vec<GateOp> {
    vec![
        cx(control, target),
        ry(target, -theta / 2.0),
        cx(control, target),
        ry(target, theta / 2.0),
    ]
}

/// `CCRy(theta)` from quarter-angle rotations interleaved with CNOTs from
/// alternating controls. The rotations add to `theta` only when both
/// controls are set and cancel otherwise.
fn double_controlled_ry(controls: [usize; 2], target: usize, theta: f64) -> Vec<GateOp> {
    let q = theta / 4.0;
    let [c1, c2] = controls;
    vec![
        ry(target, q),
        cx(c1, target),
        ry(target, -q),
        cx(c2, target),
        ry(target, q),
        cx(c1, target),
        ry(target, -q),
        cx(c2, target),
    ]
}

fn lower(op: &GateOp, toffoli: &dyn Fn(usize, usize, usize) -> Vec<GateOp>) -> Vec<GateOp> {
    match *op {
        GateOp::Swap(a, b) => swap(a, b),
        GateOp::Toffoli { controls, target } => toffoli(controls[0], controls[1], target),
        GateOp::CRy {
            control,
            target,
            theta,
        } => controlled_ry(control, target, theta),
        GateOp::CCRy {
            controls,
            target,
            theta,
        } => double_controlled_ry(controls, target, theta),
        other => vec![other],
    }
}

fn rebuild(
    circuit: &Circuit,
    toffoli: &dyn Fn(usize, usize, usize) -> Vec<GateOp>,
) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.n_qubits());
    let mut labels = circuit.labels().iter().peekable();
    for (i, op) in circuit.ops().iter().enumerate() {
        while let Some(label) = labels.next_if(|l| l.start == i) {
            out.mark(label.name.clone());
        }
        for lowered in lower(op, toffoli) {
            out.push(lowered)?;
        }
    }
    for label in labels {
        out.mark(label.name.clone());
    }
    Ok(out)
}

/// Rewrites every extended gate into the restricted set. Step labels are
/// carried over to the first lowered op of each step.
pub fn decompose(circuit: &Circuit) -> Result<Circuit> {
    rebuild(circuit, &toffoli_t_depth4)
}

/// Like [`decompose`], but a Toffoli whose two controls are not coupled on
/// `graph` while both couple to the target uses [`star_toffoli`].
pub fn decompose_for_device(
    circuit: &Circuit,
    graph: &ConnectivityGraph,
    assignment: &QubitAssignment,
) -> Result<Circuit> {
    let adjacent = |a: usize, b: usize| match (assignment.physical(a), assignment.physical(b)) {
        (Some(pa), Some(pb)) => graph.has_edge(pa, pb),
        _ => false,
    };
    let toffoli = |c1: usize, c2: usize, t: usize| {
        if !adjacent(c1, c2) && adjacent(c1, t) && adjacent(c2, t) {
            star_toffoli(c1, c2, t)
        } else {
            toffoli_t_depth4(c1, c2, t)
        }
    };
    rebuild(circuit, &toffoli)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::{circuit_unitary, Unitary};

    fn toffoli_matrix() -> Unitary {
        // controls on qubits 0 and 1, target qubit 2
        let mut rows = vec![vec![0.0; 8]; 8];
        let image = |i: usize| if i & 0b011 == 0b011 { i ^ 0b100 } else { i };
        for i in 0..8 {
            rows[image(i)][i] = 1.0;
        }
        Unitary::from_real(&rows)
    }

    fn single(n: usize, op: GateOp) -> Circuit {
        Circuit::from_ops(n, [op]).unwrap()
    }

    #[test]
    fn swap_uses_four_hadamards_three_cnots() {
        let d = decompose(&single(2, GateOp::Swap(0, 1))).unwrap();
        assert_eq!(d.len(), 7);
        assert_eq!(d.count("h"), 4);
        assert_eq!(d.count("cx"), 3);
        let swap = Unitary::from_real(&[
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(circuit_unitary(&d).unwrap().max_abs_diff(&swap) < 1e-12);
    }

    #[test]
    fn toffoli_six_cnot_counts_and_unitary() {
        let d = decompose(&single(
            3,
            GateOp::Toffoli {
                controls: [0, 1],
                target: 2,
            },
        ))
        .unwrap();
        assert_eq!(d.len(), 16);
        assert_eq!(d.count("cx"), 6);
        assert_eq!(d.len() - d.count("cx"), 10);
        let u = circuit_unitary(&d).unwrap();
        assert!(u.equals_up_to_phase(&toffoli_matrix(), 1e-12));
    }

    #[test]
    fn star_toffoli_unitary_and_coupling() {
        let c = Circuit::from_ops(3, star_toffoli(0, 1, 2)).unwrap();
        assert!(circuit_unitary(&c)
            .unwrap()
            .equals_up_to_phase(&toffoli_matrix(), 1e-12));
        // no CNOT couples the two controls
        assert!(c.ops().iter().all(|op| match *op {
            GateOp::Cnot { control, target } => control == 2 || target == 2,
            _ => true,
        }));
    }

    #[test]
    fn controlled_ry_uses_half_angles() {
        let d = decompose(&single(
            2,
            GateOp::CRy {
                control: 1,
                target: 0,
                theta: 4.304,
            },
        ))
        .unwrap();
        let angles: Vec<f64> = d.ops().iter().filter_map(GateOp::angle).collect();
        assert_eq!(angles, vec![-2.152, 2.152]);
    }

    #[test]
    fn double_controlled_ry_uses_quarter_angles() {
        let op = GateOp::CCRy {
            controls: [0, 1],
            target: 2,
            theta: 1.325,
        };
        let d = decompose(&single(3, op)).unwrap();
        assert!(d
            .ops()
            .iter()
            .filter_map(GateOp::angle)
            .all(|a| (a.abs() - 0.33125).abs() < 1e-15));
        let u = circuit_unitary(&d).unwrap();
        let reference = circuit_unitary(&single(3, op)).unwrap();
        assert!(u.max_abs_diff(&reference) < 1e-12);
    }

    #[test]
    fn labels_survive_decomposition() {
        let mut c = Circuit::new(3);
        c.mark("A");
        c.push(GateOp::Swap(0, 1)).unwrap();
        c.mark("B");
        c.push(GateOp::H(2)).unwrap();
        let d = decompose(&c).unwrap();
        assert_eq!(d.step("A").unwrap().len(), 7);
        assert_eq!(d.step("B").unwrap(), &[GateOp::H(2)]);
    }
}
