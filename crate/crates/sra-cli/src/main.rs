//! Command-line front end: simulate dark-count records, sweep the stability
//! comparison, fit the interval model, or run the whole report pipeline.
//!
//! Exit codes: 0 on success (for `report`, only when the ranked
//! representation dominates), 1 on analysis failures, 2 on usage errors.

mod analysis;
mod commands;
mod common;
mod json;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "sra-kit",
    version,
    about = "Characterize detector dark-count noise with ranked interval statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dark-count interval record.
    Simulate(commands::simulate::SimulateArgs),
    /// Compare subsample stability of ranked vs histogram representations.
    Stability(commands::stability::StabilityArgs),
    /// Fit the interval model and report goodness of fit.
    Fit(commands::fit::FitArgs),
    /// Run the full comparison pipeline and write a report.
    Report(commands::report::ReportArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(args) => commands::simulate::run(args),
        Command::Stability(args) => commands::stability::run(args),
        Command::Fit(args) => commands::fit::run(args),
        Command::Report(args) => commands::report::run(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
