use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symvert_cli::checks::run_suite;
use symvert_cli::commands::{self, Bounds};
use symvert_cli::report::{blocks_text, outcome_line, vertex_text};
use symvert_cli::{CliError, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "symvert", version, about = "Symmetric vertices and real blocks of modular group representations in characteristic 2")]
struct Cli {
    /// Degree m of the coefficient field GF(2^m)
    #[arg(long, global = true)]
    field_degree: Option<u32>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = Bounds::default().group_order)]
    bound_group_order: usize,
    #[arg(long, global = true, default_value_t = Bounds::default().dim)]
    bound_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Green and symmetric vertices, sources and case of an indecomposable module
    Vertices {
        /// group file, or a built-in group name
        group: String,
        /// module file
        module: String,
        /// form file with a nondegenerate symmetric invariant form to use as base form
        #[arg(long)]
        form: Option<String>,
    },
    /// Blocks of kG with defect and extended defect groups
    Blocks {
        /// group file, or a built-in group name
        group: String,
    },
    /// Run a verification suite: paper-examples, oracle-small or all
    Verify { suite: String },
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let bounds = Bounds { group_order: cli.bound_group_order, dim: cli.bound_dim };
    match &cli.command {
        Command::Vertices { group, module, form } => {
            let j = commands::vertices(group, module, form.as_deref(), cli.field_degree, cli.seed, &bounds)?;
            if cli.json {
                emit(&(serde_json::to_string_pretty(&j).expect("serializable") + "\n"));
            } else {
                emit(&vertex_text(&j));
            }
            Ok(true)
        }
        Command::Blocks { group } => {
            let j = commands::blocks(group, cli.field_degree, cli.seed, &bounds)?;
            if cli.json {
                emit(&(serde_json::to_string_pretty(&j).expect("serializable") + "\n"));
            } else {
                emit(&blocks_text(&j));
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let outcomes = run_suite(suite, cli.seed)?;
            if cli.json {
                emit(&(serde_json::to_string_pretty(&outcomes).expect("serializable") + "\n"));
            } else {
                for o in &outcomes {
                    emit(&(outcome_line(o) + "\n"));
                }
            }
            Ok(outcomes.iter().all(|o| o.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("symvert: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
