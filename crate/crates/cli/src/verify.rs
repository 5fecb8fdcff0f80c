//! Unitary checks on every decomposition plus the gate budget and device
//! fit of the lowered experiment circuit.

use qdist_core::circuit::{
    build_experiment_circuit, decompose, decompose_for_device, star_graph_ibm5, star_toffoli,
    validate_connectivity, Circuit, QubitAssignment,
};
use qdist_core::classifier::prepare_state;
use qdist_core::seeding::task_rng;
use qdist_core::statevector::{circuit_unitary, GateOp};
use rand::Rng;
use serde::Serialize;

use crate::presets::{training_set, x0, x1, Preset};
use crate::CliError;

pub const GATE_BUDGET: usize = 80;
pub const RANDOM_ANGLES: usize = 50;

/// Deliberate defects for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Appends a small stray rotation to the lowered Toffoli.
    WrongToffoliAngle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn unitary_check(
    name: &str,
    ideal: &Circuit,
    lowered: &Circuit,
    tol: f64,
) -> Result<Check, CliError> {
    let distance = circuit_unitary(ideal)?.phase_distance(&circuit_unitary(lowered)?);
    Ok(Check {
        name: name.into(),
        pass: distance <= tol,
        detail: format!(
            "{} gates, phase distance {distance:.3e} (tol {tol:.0e})",
            lowered.len()
        ),
    })
}

fn rotation_sweep(
    name: &str,
    seed: u64,
    stream: u64,
    make: impl Fn(f64) -> GateOp,
) -> Result<Check, CliError> {
    let mut rng = task_rng(seed, stream);
    let mut worst = 0.0f64;
    for _ in 0..RANDOM_ANGLES {
        let theta = rng.random_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI);
        let ideal = Circuit::from_ops(3, [make(theta)])?;
        let lowered = decompose(&ideal)?;
        worst = worst.max(circuit_unitary(&ideal)?.phase_distance(&circuit_unitary(&lowered)?));
    }
    Ok(Check {
        name: name.into(),
        pass: worst <= 1e-10,
        detail: format!(
            "{RANDOM_ANGLES} random angles, worst phase distance {worst:.3e} (tol 1e-10)"
        ),
    })
}

pub fn verify(fault: Fault, seed: u64) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();

    let swap = Circuit::from_ops(2, [GateOp::Swap(0, 1)])?;
    checks.push(unitary_check("swap", &swap, &decompose(&swap)?, 1e-12)?);

    let toffoli = Circuit::from_ops(
        3,
        [GateOp::Toffoli {
            controls: [0, 1],
            target: 2,
        }],
    )?;
    let mut lowered = decompose(&toffoli)?;
    if fault == Fault::WrongToffoliAngle {
        lowered.push(GateOp::Ry {
            target: 2,
            theta: 1e-3,
        })?;
    }
    checks.push(unitary_check("toffoli", &toffoli, &lowered, 1e-12)?);

    let star = Circuit::from_ops(3, star_toffoli(0, 1, 2))?;
    checks.push(unitary_check("toffoli (star)", &toffoli, &star, 1e-12)?);

    checks.push(rotation_sweep("cry", seed, 0, |theta| GateOp::CRy {
        control: 0,
        target: 2,
        theta,
    })?);
    checks.push(rotation_sweep("ccry", seed, 1, |theta| GateOp::CCRy {
        controls: [0, 1],
        target: 2,
        theta,
    })?);

    let graph = star_graph_ibm5();
    let assignment = QubitAssignment::experiment_on_star();
    let train = training_set();
    for preset in Preset::ALL {
        let circuit = build_experiment_circuit(&preset.vector(), &x0(), &x1())?;
        let lowered = decompose_for_device(&circuit, &graph, &assignment)?;
        checks.push(Check {
            name: format!("{} gate budget", preset.name()),
            pass: lowered.len() <= GATE_BUDGET,
            detail: format!("{} gates (budget {GATE_BUDGET})", lowered.len()),
        });
        let violations = validate_connectivity(&lowered, &graph, &assignment)?;
        checks.push(Check {
            name: format!("{} connectivity", preset.name()),
            pass: violations.is_empty(),
            detail: format!("{} uncoupled CNOTs on the 5-qubit star", violations.len()),
        });
        let expected = prepare_state(&train, &preset.vector())?;
        let got = lowered.simulate()?;
        let diff = got
            .amplitudes()
            .iter()
            .zip(expected.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        checks.push(Check {
            name: format!("{} prepared state", preset.name()),
            pass: diff <= 1e-10,
            detail: format!("max amplitude difference {diff:.3e}"),
        });
    }
    Ok(checks)
}
