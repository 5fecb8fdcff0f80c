//! Commands behind the `qdist` binary.

pub mod presets;
pub mod reproduce;
pub mod verify;

use std::path::{Path, PathBuf};

use qdist_core::circuit::{
    build_experiment_circuit, decompose_for_device, export_qasm, star_graph_ibm5, QubitAssignment,
};
use qdist_core::classifier::{
    interfere_and_read, interfere_and_sample, prepare_state, ClassificationOutcome,
};
use qdist_core::stats::{shots_for_error, worst_case_bound, Method};
use serde::Serialize;

use presets::{training_set, x0, x1, Preset};
use reproduce::{Table1Row, Table2Row, CANONICAL_REPS};
use verify::{Check, Fault};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SEED_ENV: &str = "QDIST_SEED";
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] qdist_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// What a command was asked to do, echoed in JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub options: serde_json::Value,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: &'static str,
    seed: u64,
    config: &'a RunConfig,
    result: T,
}

fn json<T: Serialize>(config: &RunConfig, result: T) -> String {
    let envelope = Envelope {
        version: VERSION,
        seed: config.seed,
        config,
        result,
    };
    serde_json::to_string_pretty(&envelope).expect("plain data serializes") + "\n"
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Sends `text` to the configured output file, or returns it for stdout.
fn emit(config: &RunConfig, text: String) -> Result<String, CliError> {
    match &config.output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub enum Input {
    Preset(Preset),
    Vector(String),
}

#[derive(Serialize)]
struct ClassifyResult {
    input: Vec<f64>,
    #[serde(flatten)]
    outcome: ClassificationOutcome,
}

pub fn cmd_classify(
    config: &RunConfig,
    input: Input,
    shots: Option<u64>,
) -> Result<String, CliError> {
    let x = match input {
        Input::Preset(p) => p.vector(),
        Input::Vector(text) => presets::parse_input(&text, 2)?,
    };
    let state = prepare_state(&training_set(), &x)?;
    let outcome = match shots {
        None => interfere_and_read(&state)?,
        Some(0) => return Err(CliError::Usage("--shots must be >= 1".into())),
        Some(n) => interfere_and_sample(&state, n, config.seed)?,
    };
    let text = match config.format {
        Format::Json => json(config, ClassifyResult { input: x, outcome }),
        Format::Csv => format!(
            "p_acc,p_c0,p_c1,predicted\n{:.6},{:.6},{:.6},{}\n",
            outcome.p_acc, outcome.p_class_minus, outcome.p_class_plus, outcome.predicted
        ),
        Format::Table => {
            let mode = match (outcome.shots, outcome.accepted) {
                (Some(s), Some(a)) => {
                    format!("sampled, {s} shots, {a} accepted, seed {}", config.seed)
                }
                _ => "exact".to_string(),
            };
            format!(
                "input      ({:.4}, {:.4})\nreadout    {mode}\np_acc      {:.4}\np(c=0)     {:.4}\np(c=1)     {:.4}\npredicted  {}\n",
                x[0], x[1], outcome.p_acc, outcome.p_class_minus, outcome.p_class_plus, outcome.predicted
            )
        }
    };
    emit(config, text)
}

#[derive(Serialize)]
struct Table2Result<'a> {
    canonical: bool,
    rows: &'a [Table2Row],
}

pub fn cmd_reproduce(config: &RunConfig, table: u8, reps: usize) -> Result<String, CliError> {
    let text = match table {
        1 => {
            let rows: Vec<Table1Row> = reproduce::table1(config.seed)?;
            match config.format {
                Format::Json => json(config, &rows),
                Format::Csv => reproduce::table1_csv(&rows),
                Format::Table => {
                    let mut out = format!(
                        "{:<13} {:<11} {:>7} {:>7} {:>7} {:>9}\n",
                        "input", "source", "p_acc", "p(c=0)", "p(c=1)", "predicted"
                    );
                    for r in &rows {
                        out.push_str(&format!(
                            "{:<13} {:<11} {:>7.3} {:>7.3} {:>7.3} {:>9}\n",
                            r.preset.name(),
                            r.source,
                            r.p_acc,
                            r.p_c0,
                            r.p_c1,
                            r.predicted
                        ));
                    }
                    out
                }
            }
        }
        2 => {
            let canonical = reps == CANONICAL_REPS;
            if !canonical {
                eprintln!(
                    "note: non-canonical run with {reps} repetitions (canonical: {CANONICAL_REPS})"
                );
            }
            let rows = reproduce::table2(reps, config.seed)?;
            match config.format {
                Format::Json => json(
                    config,
                    Table2Result {
                        canonical,
                        rows: &rows,
                    },
                ),
                Format::Csv => reproduce::table2_csv(&rows),
                Format::Table => {
                    let mut out = format!(
                        "{:<18} {:>5} {:>10} {:>10} {:>10} {:>8} {:>5}\n",
                        "dataset", "reps", "error", "variance", "p_acc", "expected", "pass"
                    );
                    for r in &rows {
                        out.push_str(&format!(
                            "{:<18} {:>5} {:>10.4} {:>10.6} {:>10.4} {:>8} {:>5}\n",
                            r.dataset,
                            r.reps,
                            r.mean_error,
                            r.variance,
                            r.mean_p_acc,
                            format!("{:.2}±{:.2}", r.expected, r.tolerance),
                            r.pass
                        ));
                    }
                    if !canonical {
                        out.push_str(&format!("(non-canonical: {reps} repetitions)\n"));
                    }
                    out
                }
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown table {other}; expected 1 or 2"
            )))
        }
    };
    emit(config, text)
}

/// Runs every decomposition check. The rendered report is returned together
/// with whether all checks passed.
pub fn cmd_verify(config: &RunConfig, fault: Fault) -> Result<(String, bool), CliError> {
    let checks: Vec<Check> = verify::verify(fault, config.seed)?;
    let all_pass = checks.iter().all(|c| c.pass);
    let text = match config.format {
        Format::Json => json(config, &checks),
        Format::Csv => {
            let mut out = String::from("check,pass,detail\n");
            for c in &checks {
                out.push_str(&format!("{},{},\"{}\"\n", c.name, c.pass, c.detail));
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            for c in &checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                out.push_str(&format!("{mark} {:<28} {}\n", c.name, c.detail));
            }
            out
        }
    };
    Ok((emit(config, text)?, all_pass))
}

/// Device-lowered experiment circuit for `preset`, on the logical wires.
pub fn experiment_qasm(preset: Preset) -> Result<String, CliError> {
    let circuit = build_experiment_circuit(&preset.vector(), &x0(), &x1())?;
    let lowered = decompose_for_device(
        &circuit,
        &star_graph_ibm5(),
        &QubitAssignment::experiment_on_star(),
    )?;
    Ok(export_qasm(&lowered)?)
}

pub fn cmd_export_qasm(preset: Preset, path: &Path) -> Result<(), CliError> {
    write_file(path, &experiment_qasm(preset)?)
}

#[derive(Serialize)]
struct ShotsResult {
    epsilon: f64,
    z: f64,
    method: Method,
    shots: u64,
    bound: f64,
}

pub fn cmd_shots(
    config: &RunConfig,
    epsilon: f64,
    z: f64,
    method: Method,
) -> Result<String, CliError> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(CliError::Usage(format!(
            "--eps must lie in (0, 0.5), got {epsilon}"
        )));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(CliError::Usage(format!("--z must be positive, got {z}")));
    }
    let shots = shots_for_error(epsilon, z, method)?;
    let bound = worst_case_bound(method, shots, z);
    let text = match config.format {
        Format::Json => json(
            config,
            ShotsResult {
                epsilon,
                z,
                method,
                shots,
                bound,
            },
        ),
        Format::Csv => {
            format!("method,epsilon,z,shots,bound\n{method},{epsilon},{z},{shots},{bound:.8}\n")
        }
        Format::Table => {
            format!("{shots}\n({method} worst-case error at {shots} shots: {bound:.6})\n")
        }
    };
    emit(config, text)
}
