use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

#[derive(Parser)]
#[command(name = "torsade", version, about = "Twisted GL(N) endoscopy: orders, denominators, parameters")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate or describe an Arthur parameter file (`-` reads stdin).
    Param {
        #[arg(value_enum)]
        action: ParamAction,
        file: PathBuf,
    },
    /// Compare two exponents given as comma separated rationals.
    Order {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
        /// Length of the first factor for `product`.
        #[arg(long)]
        split: Option<usize>,
        /// Use the odd-`N` variant of `E`.
        #[arg(long)]
        n_odd: bool,
    },
    /// Denominator identity campaigns.
    Denom {
        #[command(subcommand)]
        action: DenomAction,
    },
    /// Check the exponent inequality over a parameter file or a family.
    Verify {
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        file: Option<PathBuf>,
        /// All trivial-character parameters with `N` up to this bound.
        #[arg(long)]
        family: Option<usize>,
    },
    /// Reduce an induced datum to Langlands position.
    Reduce { file: PathBuf },
    /// Emit reference tables.
    Tables {
        #[arg(value_enum)]
        table: TableArg,
        n: usize,
        /// Sample points for the norm table.
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ParamAction {
    Validate,
    Show,
}

#[derive(Subcommand)]
enum DenomAction {
    Check {
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    #[value(name = "G")]
    G,
    #[value(name = "theta")]
    Theta,
    #[value(name = "E")]
    E,
    #[value(name = "H_so_even")]
    HSoEven,
    #[value(name = "H_so_odd")]
    HSoOdd,
    #[value(name = "H_sp")]
    HSp,
    #[value(name = "product")]
    Product,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableArg {
    Endoscopy,
    RestrictedRoots,
    Norm,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.format;
    let result = match cli.command {
        Command::Param { action, file } => commands::param(action, &file, fmt),
        Command::Order { kind, lhs, rhs, split, n_odd } => commands::order(kind, &lhs, &rhs, split, n_odd, fmt),
        Command::Denom { action: DenomAction::Check { n, samples, seed } } => commands::denom(n, samples, seed, fmt),
        Command::Verify { file, family } => commands::verify(file.as_deref(), family, fmt),
        Command::Reduce { file } => commands::reduce(&file, fmt),
        Command::Tables { table, n, samples, seed } => commands::tables(table, n, samples, seed, fmt),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
