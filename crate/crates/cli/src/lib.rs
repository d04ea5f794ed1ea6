//! Command-line front end for the `youngspec` library.
//!
//! [`run`] parses arguments, dispatches, and returns the process exit code:
//! 0 on success, 1 when a check fails or a computation breaks down, 2 on a
//! usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use youngspec::{Partition, DEFAULT_DIMENSION_CAP};

mod commands;
mod render;

/// Caps above this trigger a warning on the error stream.
pub const CAP_WARNING_THRESHOLD: usize = 10_000;

const ORDERING_HELP: &str = "\
Shapes:
  a,b,c     parts in weakly decreasing order, e.g. 4,3,2,1
  stair:k   the staircase (k, k-1, ..., 1)
  hook:N    the shape (N-1, 1)

Basis ordering:
  The standard Young tableaux of a shape are ordered lexicographically by
  their row reading word: the entries of the first row left to right, then
  the second row, and so on. Tableau 0 is the smallest word. Matrix rows and
  columns, `dim --verbose` listings and all sampled matrices use this order.

Generators:
  Word entry k stands for the adjacent transposition (k, k+1), 1 <= k < N;
  a word [a, b] is represented by the product rho(a) rho(b).

Seeds:
  Every sampling command requires an explicit --seed; identical arguments
  produce byte-identical output.";

#[derive(Debug, Parser)]
#[command(
    name = "youngspec",
    version,
    about = "Symmetric group representations and spectra of random Coxeter combinations",
    after_long_help = ORDERING_HELP
)]
pub struct Cli {
    /// Largest representation dimension any command may build.
    #[arg(long, global = true, default_value_t = DEFAULT_DIMENSION_CAP)]
    pub cap: usize,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Domino recursion (exact, any r).
    Mn,
    /// Content closed forms (exact, r <= 2).
    Closed,
    /// Normalized trace of the representing matrix (floating point).
    Trace,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension f of the irreducible representation.
    Dim {
        shape: Partition,
        /// List the basis tableaux on the error stream.
        #[arg(long)]
        verbose: bool,
    },
    /// Character ratio on the class of r disjoint transpositions.
    Charratio {
        shape: Partition,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Method::Mn)]
        method: Method,
    },
    /// Histogram of pooled eigenvalues of sampled matrices (CSV by default).
    Spectrum {
        shape: Partition,
        #[arg(long, default_value_t = 200, value_parser = positive)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = youngspec::spectra::DEFAULT_BINS, value_parser = positive)]
        bins: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo spectral moments with targets and residuals (JSON by default).
    Moments {
        shape: Partition,
        #[arg(long, default_value_t = 200, value_parser = positive)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        smax: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact and numerical checks; exit code 1 on failure.
    #[command(subcommand)]
    Check(Check),
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Coxeter relations, symmetry and orthogonality of the generators.
    Coxeter { shape: Partition },
    /// Staircase determinant identities for r = 0..=rmax.
    Identities {
        /// Number of rows.
        #[arg(long = "K")]
        k: usize,
        /// Comma-separated gap parameters; all zero when omitted.
        #[arg(long, value_delimiter = ',')]
        eta: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
    },
    /// Plancherel mean and variance of the transposition character ratio.
    Plancherel {
        #[arg(long)]
        n: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// An argument combination rejected after parsing; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    CheckFailed,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    if cli.cap > CAP_WARNING_THRESHOLD {
        let _ = writeln!(
            stderr,
            "warning: dimension cap {} is above {CAP_WARNING_THRESHOLD}; dense matrices take f^2 * 8 bytes each",
            cli.cap
        );
    }
    match commands::dispatch(&cli, stdout, stderr) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::CheckFailed) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                return 2;
            }
            match e.downcast_ref::<youngspec::Error>() {
                Some(inner) if inner.is_input_error() => 2,
                _ => 1,
            }
        }
    }
}
