use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use sra_kit::{simulate_intervals, write_record, DetectorConfig};

use crate::common::{efficiency_f64, non_negative_f64, positive_f64, UnitArg};

/// Generate a synthetic dark-count interval record.
#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Dark-count rate lambda (counts/s).
    #[arg(long, value_parser = positive_f64, default_value_t = 5000.0)]
    pub rate: f64,

    /// Detector dead time (s).
    #[arg(long = "dead-time", value_parser = non_negative_f64, default_value_t = 2.4e-5)]
    pub dead_time: f64,

    /// Number of intervals to generate.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 100_000)]
    pub n: u64,

    /// Detector efficiency in (0, 1]; recorded as metadata only.
    #[arg(long, value_parser = efficiency_f64, default_value_t = 0.15)]
    pub efficiency: f64,

    /// Generator seed; identical seeds give identical files.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Unit of the written values.
    #[arg(long, value_enum, default_value_t = UnitArg::S)]
    pub unit: UnitArg,

    /// Output record file.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: SimulateArgs) -> Result<i32> {
    let config = DetectorConfig {
        dark_rate: args.rate,
        dead_time: args.dead_time,
        efficiency: args.efficiency,
        n_events: args.n as usize,
        seed: args.seed,
    };
    let sample = simulate_intervals(&config)?;
    write_record(&sample, &args.out, args.unit.to_unit())?;
    println!(
        "wrote {} intervals to {} (rate={} 1/s, dead_time={} s, seed={})",
        sample.len(),
        args.out.display(),
        args.rate,
        args.dead_time,
        args.seed
    );
    Ok(0)
}
