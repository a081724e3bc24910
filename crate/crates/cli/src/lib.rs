//! Command-line front end for `kerpair`: reads matrix files, runs kernel and
//! kernel-pair computations, and reports results as plain text or JSON.

pub mod commands;
pub mod document;
pub mod file;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use document::{Basis, Check, NamedMatrix, PrimeEntry, ResultDocument, Status};
pub use file::MatrixFile;

/// Seed used by randomized checks when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] kerpair::Error),
}

impl CliError {
    /// Violations of a checked identity exit with 1, everything else with 2.
    pub fn status(&self) -> Status {
        use kerpair::Error as E;
        match self {
            CliError::Core(
                E::IdentityViolated { .. }
                | E::BaseChangeViolated { .. }
                | E::SplittingViolated(_)
                | E::ConsistencyViolated(_)
                | E::MethodMismatch(_),
            ) => Status::Violation,
            _ => Status::Error,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Projection over fields and GF(p)[z], per-prime gluing over square-free
    /// moduli, enumeration otherwise.
    Auto,
    Projection,
    Preimage,
    Quotient,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    /// Any initial state.
    Free,
    /// Final state equals initial state.
    Periodic,
    /// Initial state from `--x0`, zero by default.
    Fixed,
}

#[derive(Debug, Parser)]
#[command(name = "kerpair", version, about = "Exact kernels of pairs of linear maps")]
pub struct Cli {
    /// Print the full result document as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Algorithm for `kernel-pair`.
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Run every applicable method and compare.
    #[arg(long, global = true)]
    pub verify: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel of one matrix.
    Kernel { file: PathBuf, name: String },
    /// Inputs u with A x + B u = 0 for some x.
    KernelPair { file: PathBuf, a: String, b: String },
    /// Prime factors and structural idempotents of Z/m.
    Idempotents { m: u64 },
    /// Whether a vector u admits x with A x + B u = 0, with a witness.
    Member {
        file: PathBuf,
        a: String,
        b: String,
        /// Entries of u in element syntax.
        #[arg(allow_hyphen_values = true, num_args = 0..)]
        vector: Vec<String>,
    },
    /// Trajectory of x(t+1) = A x(t) + B u(t).
    Simulate {
        file: PathBuf,
        a: String,
        b: String,
        /// File holding the initial state on one line.
        #[arg(long)]
        x0: Option<PathBuf>,
        /// File with one input vector per line.
        #[arg(long)]
        inputs: Option<PathBuf>,
        /// Horizon; inputs are truncated or padded with zeros.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Fixed)]
        boundary: BoundaryArg,
    },
    /// Runs the invariant suite on (A, B).
    Verify {
        file: PathBuf,
        a: String,
        b: String,
        /// Random automorphism triples to test.
        #[arg(long, default_value_t = 8)]
        trials: usize,
        /// Replace the computed section by this matrix from the file.
        #[arg(long)]
        section: Option<String>,
    },
}

/// Runs a parsed command line. Errors are folded into the document.
pub fn execute(cli: &Cli, command: Vec<String>) -> ResultDocument {
    let mut doc = ResultDocument::new(command);
    if let Err(e) = commands::dispatch(cli, &mut doc) {
        doc.set_status(e.status());
        doc.messages.push(format!("error: {e}"));
    }
    doc
}

/// Parses `args` (program name first) and runs them. Usage errors from the
/// argument parser come back as an error-status document.
pub fn run_args<I, T>(args: I) -> ResultDocument
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&args) {
        Ok(cli) => execute(&cli, args),
        Err(e) => {
            let mut doc = ResultDocument::new(args);
            doc.set_status(Status::Error);
            doc.messages.push(e.to_string().trim_end().to_string());
            doc
        }
    }
}
