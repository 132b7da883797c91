//! `qadder`: rate regions, ensemble optimization, code simulation, and
//! many-sender rate-sum tables for the quantum binary adder channel.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on verification failure.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod docs;
mod verify;

use commands::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "qadder",
    version,
    about = "Numerical laboratory for the quantum binary adder channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rate region of a scenario (classical | ss:ALPHA | ghz | 2ebit)
    Region(RegionArgs),
    /// Maximize the joint Holevo quantity over encoding ensembles
    Optimize(OptimizeArgs),
    /// Tabulate assisted and unassisted rate sums over sender counts
    Ratesum(RatesumArgs),
    /// Simulate a code exactly and report its error probabilities
    Simulate(SimulateArgs),
    /// Run the built-in verification suites
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct RegionArgs {
    /// Scenario tag: classical, ss:ALPHA (or ss with --alpha), ghz, 2ebit
    #[arg(long)]
    pub scenario: String,
    /// Entanglement amplitude for the ss scenario
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct OptimizeArgs {
    /// Scenario tag: unassisted, ss:ALPHA, ghz, 2ebit
    #[arg(long)]
    pub scenario: String,
    /// Encoding mode: prepare, unitary, pauli (defaults to the scenario's
    /// natural mode)
    #[arg(long)]
    pub mode: Option<String>,
    /// Entanglement amplitude for the ss scenario
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Objective evaluations per restart
    #[arg(long, default_value_t = 20_000)]
    pub budget: u64,
    #[arg(long, env = "QADDER_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct RatesumArgs {
    /// Tabulate L = 1..=max
    #[arg(long)]
    pub max: Option<usize>,
    /// Comma-separated sender counts, e.g. 512,1024
    #[arg(long)]
    pub list: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write a gnuplot script for the table
    #[arg(long)]
    pub plot_script: Option<PathBuf>,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Code to run: dense, classical:FILE, ghz-lift:FILE, wrap:FILE
    #[arg(long)]
    pub code: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, env = "QADDER_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Negative control: corrupt the antisymmetric Bell sign so the
    /// invariance suite must fail
    #[arg(long, hide = true, default_value_t = false)]
    pub corrupt_bell: bool,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                std::process::exit(0);
            }
            eprint!("{err}");
            std::process::exit(2);
        }
    };

    let outcome = match &cli.command {
        Command::Region(args) => commands::cmd_region(args),
        Command::Optimize(args) => commands::cmd_optimize(args),
        Command::Ratesum(args) => commands::cmd_ratesum(args),
        Command::Simulate(args) => commands::cmd_simulate(args),
        Command::Verify(args) => commands::cmd_verify(args),
    };

    match outcome {
        Ok(code) => std::process::exit(code),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(CliError::Failure(message)) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}
