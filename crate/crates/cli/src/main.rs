use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdist_core::stats::Method;
use qdist_tool::presets::Preset;
use qdist_tool::reproduce::CANONICAL_REPS;
use qdist_tool::verify::Fault;
use qdist_tool::{CliError, Format, Input, RunConfig, DEFAULT_SEED, SEED_ENV};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qdist",
    version,
    about = "Distance-based quantum classifier toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Master seed; falls back to the QDIST_SEED environment variable, then 0.
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one input against the two-point Iris training set.
    Classify {
        #[arg(
            long,
            value_enum,
            conflicts_with = "input",
            required_unless_present = "input"
        )]
        preset: Option<Preset>,
        /// Comma-separated 2-vector; rescaled to unit length.
        #[arg(long, allow_hyphen_values = true)]
        input: Option<String>,
        /// Sample this many shots instead of reading out exactly.
        #[arg(long)]
        shots: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate table 1 (two-point readout) or table 2 (benchmark).
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        table: u8,
        #[arg(long, default_value_t = CANONICAL_REPS)]
        reps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check every gate decomposition and the lowered experiment circuit.
    VerifyDecompositions {
        #[arg(long, hide = true)]
        inject_wrong_angle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write the lowered experiment circuit as OpenQASM 2.0.
    ExportQasm {
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Shots needed for a worst-case estimation error.
    Shots {
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = qdist_core::stats::Z_99)]
        z: f64,
        #[arg(long, default_value = "wald", value_parser = parse_method)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: qdist_core::Error| e.to_string())
}

fn config(command: &'static str, common: Common, options: serde_json::Value) -> RunConfig {
    RunConfig {
        command,
        seed: common.seed,
        format: common.format,
        output: common.output,
        options,
    }
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Classify {
            preset,
            input,
            shots,
            common,
        } => {
            let cfg = config(
                "classify",
                common,
                json!({ "preset": preset, "input": input, "shots": shots }),
            );
            let input = match (preset, input) {
                (Some(p), _) => Input::Preset(p),
                (None, Some(v)) => Input::Vector(v),
                (None, None) => return Err(CliError::Usage("give --preset or --input".into())),
            };
            Ok((qdist_tool::cmd_classify(&cfg, input, shots)?, true))
        }
        Command::Reproduce {
            table,
            reps,
            common,
        } => {
            let cfg = config("reproduce", common, json!({ "table": table, "reps": reps }));
            Ok((qdist_tool::cmd_reproduce(&cfg, table, reps)?, true))
        }
        Command::VerifyDecompositions {
            inject_wrong_angle,
            common,
        } => {
            let cfg = config("verify-decompositions", common, json!({}));
            let fault = if inject_wrong_angle {
                Fault::WrongToffoliAngle
            } else {
                Fault::None
            };
            qdist_tool::cmd_verify(&cfg, fault)
        }
        Command::ExportQasm { preset, output } => {
            qdist_tool::cmd_export_qasm(preset, &output)?;
            Ok((String::new(), true))
        }
        Command::Shots {
            eps,
            z,
            method,
            common,
        } => {
            let cfg = config(
                "shots",
                common,
                json!({ "eps": eps, "z": z, "method": method }),
            );
            Ok((qdist_tool::cmd_shots(&cfg, eps, z, method)?, true))
        }
    }
}

/// Parses `args` and runs the command. Returns the exit code, stdout text
/// and stderr text.
fn execute<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    match run(cli) {
        Ok((text, true)) => (0, text, String::new()),
        Ok((text, false)) => (1, text, String::new()),
        Err(e) => (e.exit_code() as u8, String::new(), format!("error: {e}\n")),
    }
}

fn main() -> ExitCode {
    let (code, out, err) = execute(std::env::args_os());
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code)
}
