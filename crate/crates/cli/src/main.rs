//! `saxl`: analyse bases of size two from the command line.
//!
//! Exit codes: 0 on success, 2 when a resource cap is exceeded, 1 on any other error or
//! a failed verification.

mod args;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use saxl_core::engine::{analyze, AnalysisOptions, SaxlEngine, SaxlGraph};
use saxl_core::SaxlError;
use thiserror::Error;

use args::{ActionArgs, CapArgs};
use verify::Sweep;

#[derive(Parser, Debug)]
#[command(
    name = "saxl",
    version,
    about = "Bases of size two, Saxl graphs and PSL(2,q) base criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse one action and print a JSON report.
    Analyze {
        #[command(flatten)]
        action: ActionArgs,
        #[command(flatten)]
        caps: CapArgs,
        /// Skip recounting base pairs point by point.
        #[arg(long)]
        no_cross_check: bool,
        /// Skip the conjugacy-class bounds.
        #[arg(long)]
        no_class_bounds: bool,
        /// Skip the common-neighbour check.
        #[arg(long)]
        no_star: bool,
        /// Look for a clique of this size containing point 0.
        #[arg(long, value_name = "K")]
        clique: Option<usize>,
        /// Node budget for --clique; 0 means unlimited.
        #[arg(long, default_value_t = 10_000_000)]
        clique_budget: u64,
        /// Exact clique and independence numbers.
        #[arg(long)]
        exact: bool,
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Export the Saxl graph.
    Graph {
        #[command(flatten)]
        action: ActionArgs,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Run a verification sweep and print a JSON summary.
    Verify {
        #[command(subcommand)]
        sweep: Sweep,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
    Edges,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Saxl(#[from] SaxlError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("SAXL_THREADS must be a non-negative integer, got {0:?}")]
    Threads(String),
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Saxl(e) if e.is_cap_exceeded() => 2,
            _ => 1,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SAXL_THREADS") else {
        return Ok(());
    };
    let n: usize = value.trim().parse().map_err(|_| CliError::Threads(value.clone()))?;
    if n > 0 {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Analyze {
            action,
            caps,
            no_cross_check,
            no_class_bounds,
            no_star,
            clique,
            clique_budget,
            exact,
            output,
        } => {
            let caps = caps.caps();
            let action = action.build(&caps)?;
            let opts = AnalysisOptions {
                cross_check: !no_cross_check,
                class_bounds: !no_class_bounds,
                star: !no_star,
                clique_target: clique,
                clique_budget: (clique_budget > 0).then_some(clique_budget),
                exact_cliques: exact,
            };
            let report = analyze(&action, &opts, &caps)?;
            emit(&(serde_json::to_string_pretty(&report)? + "\n"), &output)
        }
        Command::Graph {
            action,
            caps,
            format,
            output,
        } => {
            let caps = caps.caps();
            let action = action.build(&caps)?;
            for w in action.warnings() {
                eprintln!("warning: {w}");
            }
            let engine = SaxlEngine::new(&action)?;
            let graph = SaxlGraph::build(&engine, &caps)?;
            let text = match format {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Edges => graph.to_edge_list(),
            };
            emit(&text, &output)
        }
        Command::Verify { sweep, caps, output } => {
            let summary = verify::run(&sweep, &caps.caps())?;
            emit(&(serde_json::to_string_pretty(&summary)? + "\n"), &output)?;
            if summary.passed {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with success; usage errors are ordinary errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
