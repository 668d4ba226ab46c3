mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Parser, Debug)]
#[command(
    name = "liftspin",
    version,
    about = "Euler factors of Ikeda and Miyawaki-Ikeda lifts"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Flags win over `LIFTSPIN_*` variables.
#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, env = "LIFTSPIN_N", default_value_t = 2)]
    pub n: i64,
    #[arg(long, global = true, env = "LIFTSPIN_K", default_value_t = 10)]
    pub k: i64,
    #[arg(long, global = true, env = "LIFTSPIN_MODE", value_enum, default_value_t = ModeArg::Symbolic)]
    pub mode: ModeArg,
    /// Single prime for numeric mode.
    #[arg(long, global = true, env = "LIFTSPIN_PRIME")]
    pub prime: Option<u64>,
    /// Use every prime up to this bound.
    #[arg(long, global = true, env = "LIFTSPIN_PRIMES_UP_TO")]
    pub primes_up_to: Option<u64>,
    /// q-expansion precision (number of coefficients).
    #[arg(long, global = true, env = "LIFTSPIN_PRECISION", default_value_t = liftspin_core::modforms::DEFAULT_PRECISION)]
    pub precision: usize,
    /// Eigenvalue table `<p> <lambda>` per line; `f:PATH` or `g:PATH` picks the form.
    #[arg(long, global = true, env = "LIFTSPIN_EIGENVALUES_FILE", value_delimiter = ',')]
    pub eigenvalues_file: Vec<String>,
    #[arg(long, global = true, env = "LIFTSPIN_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, env = "LIFTSPIN_OUTPUT")]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Numeric,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hecke eigenvalues λ(p) of the level-one eigenforms of a weight.
    Eigenvalues {
        #[arg(long)]
        weight: i64,
    },
    /// One side of a factor identity as LocalFactor JSON.
    Euler {
        #[arg(value_enum)]
        side: Side,
        identity: String,
        /// Emit only the coefficients of T^0..=T^J (default: full up to degree 32).
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// α(r, m, n) and β(r, m, n) for 0 <= m <= n.
    BetaTable,
    /// Truncated Euler product of one side of the main identity (non-rigorous approximation).
    Lvalue {
        #[arg(value_enum)]
        side: Side,
        /// Complex s, e.g. `25` or `25+3i`.
        #[arg(long, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    /// Run identity checks.
    Verify {
        /// Identity name (e.g. `main`, `ikeda_spinor`, `deg7`); omit with `--all`.
        identity: Option<String>,
        #[arg(long)]
        all: bool,
        /// Shorthand for `--mode symbolic`.
        #[arg(long, conflicts_with = "numeric")]
        symbolic: bool,
        /// Shorthand for `--mode numeric`.
        #[arg(long)]
        numeric: bool,
        /// Print the first differing coefficient of each failing check.
        #[arg(long)]
        witness: bool,
        /// Self-test: run with a β table corrupted in one entry (expected to fail).
        #[arg(long)]
        corrupt_beta: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
