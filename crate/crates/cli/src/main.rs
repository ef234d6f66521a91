use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

/// Truncated Mal'cev-Neumann expansions of p-adic algebraic numbers.
#[derive(Parser, Debug)]
#[command(name = "malcev", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: JobConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct JobConfig {
    /// The prime p (odd); files may also carry it.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Target precision as an integer or "a/b".
    #[arg(long, global = true, default_value = "2")]
    pub precision: String,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = malcev::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Newton steps per branch.
    #[arg(long, global = true, default_value_t = 30)]
    pub max_steps: usize,
    /// Maximum number of Newton tree nodes explored.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub branch_budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots of a polynomial file by Newton polygons.
    Roots {
        file: PathBuf,
        /// Follow only the branch of largest valuation with the least residue roots.
        #[arg(long)]
        first: bool,
    },
    /// Expansions of roots of unity.
    Zeta {
        /// Order p^n.
        #[arg(long, conflicts_with = "r", required_unless_present = "r")]
        n: Option<u32>,
        /// Order r prime to p.
        #[arg(long)]
        r: Option<u64>,
        /// Pick the i-th branch of the full enumeration instead of the least one.
        #[arg(long)]
        branch: Option<usize>,
        /// Cross-check the closed form against Newton (order p only).
        #[arg(long, requires = "n")]
        compare: bool,
        /// Classify every primitive p²-th root (order p² only).
        #[arg(long, requires = "n", conflicts_with = "compare")]
        enumerate: bool,
    },
    /// Tame and inertia index estimates and the tame verdict for a series file.
    Invariants {
        file: PathBuf,
        /// Residue degree of a known subfield, for the divisibility checks.
        #[arg(long)]
        known_f: Option<u64>,
    },
    /// Arithmetic on series files.
    Arith {
        #[command(subcommand)]
        op: ArithOp,
    },
    /// Run the property batteries.
    Verify {
        /// 10² samples per property instead of 10³.
        #[arg(long)]
        quick: bool,
        /// Only properties whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ArithOp {
    Add { a: PathBuf, b: PathBuf },
    Mul { a: PathBuf, b: PathBuf },
    Inv { a: PathBuf },
    Frobenius {
        a: PathBuf,
        /// Apply the t-th power of Frobenius.
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    Character {
        a: PathBuf,
        /// Class assignment "q=c0,c1,..": the value at exponent class q (coordinates of an
        /// element of F_{p^k}, k = number of coordinates). Repeatable.
        #[arg(long = "assign", required = true)]
        assign: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { kind, message }) => {
            let obj = serde_json::json!({ "error": kind, "message": message });
            println!("{obj}");
            ExitCode::from(1)
        }
    }
}
