mod classify;
mod curves;
mod numfmt;
mod polycheck;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cmclab_core::CmcError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(cmclab_core::CmcError::Verification(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Parser)]
#[command(name = "cmclab", version, about = "Constant mean curvature surfaces: sampling, verification and classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the generating curve of a screw-motion surface in PSL₂
    Curves(curves::CurvesArgs),
    /// Run the residual checks on a catalog surface
    Verify(verify::VerifyArgs),
    /// Classify a half-plane isometry under the two congruence relations
    ClassifyMoebius(classify::MoebiusArgs),
    /// Classify an unordered pair of CMC classes
    ClassifyPair(classify::PairArgs),
    /// Rebuild the degree-18 polynomial identity exactly
    Polycheck(polycheck::PolycheckArgs),
}

fn configure_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("CMCLAB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("CMCLAB_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<Outcome> {
    configure_threads()?;
    match cli.command {
        Command::Curves(a) => curves::run(a),
        Command::Verify(a) => verify::run(a),
        Command::ClassifyMoebius(a) => classify::run_moebius(a),
        Command::ClassifyPair(a) => classify::run_pair(a),
        Command::Polycheck(a) => polycheck::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
