use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde_json::json;

use sra_kit::stability_curve_aligned;

use crate::analysis::{curve_json, stability_csv, write_outputs, FileBody, Headline};
use crate::common::{parse_grid, resolve_binning, BinningArg, EdgesArg, InputArgs};
use crate::json::opt_num;

/// Deviation of the ranked and histogram representations over an N grid.
#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Number of contiguous subsamples per grid point.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), default_value_t = 100)]
    pub q: u64,

    /// Subsample-length grid as START:END:STEP (inclusive).
    #[arg(long, default_value = "20:1000:20")]
    pub grid: String,

    /// Bin-count rule for the histogram rows.
    #[arg(long, value_enum, default_value_t = BinningArg::MannWald)]
    pub binning: BinningArg,

    /// Fixed bin count overriding --binning.
    #[arg(long)]
    pub bins: Option<usize>,

    /// Histogram edge alignment across subsamples.
    #[arg(long = "hist-edges", value_enum, default_value_t = EdgesArg::PerSubsample)]
    pub hist_edges: EdgesArg,

    /// Directory for stability.csv and stability.json.
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

pub fn run(args: StabilityArgs) -> Result<i32> {
    let sample = args.input.load()?;
    let grid = parse_grid(&args.grid)?;
    let rule = resolve_binning(args.binning, args.bins);
    let curve = stability_curve_aligned(
        &sample,
        args.q as usize,
        &grid,
        rule,
        args.hist_edges.to_alignment(),
    )?;
    let headline = Headline::from_curve(&curve);

    let report = json!({
        "schema": "sra-kit/1",
        "command": "stability",
        "config": {
            "input": args.input.input.display().to_string(),
            "n_input": sample.len(),
            "q": args.q,
            "grid": args.grid,
            "binning": rule.name(),
            "hist_edges": args.hist_edges.to_alignment().name(),
        },
        "curve": curve_json(&curve),
        "eps_sra_at_1000": opt_num(headline.eps_sra_at_1000),
        "eps_hist_at_1000": opt_num(headline.eps_hist_at_1000),
        "eps_ratio": opt_num(headline.eps_ratio()),
    });

    write_outputs(
        &args.out_dir,
        vec![
            ("stability.csv".into(), FileBody::Text(stability_csv(&curve))),
            (
                "stability.json".into(),
                FileBody::Text(format!("{:#}\n", report)),
            ),
        ],
    )?;

    let last = curve.n_grid.len() - 1;
    println!(
        "stability over {} grid points (Q={}, {} binning): eps_sra(N={})={:.5}, eps_hist(N={})={:.5}",
        curve.n_grid.len(),
        args.q,
        rule.name(),
        headline.at_n,
        curve.eps_sra[last],
        headline.at_n,
        curve.eps_hist[last],
    );
    println!(
        "wrote {} and {}",
        args.out_dir.join("stability.csv").display(),
        args.out_dir.join("stability.json").display()
    );
    Ok(0)
}
