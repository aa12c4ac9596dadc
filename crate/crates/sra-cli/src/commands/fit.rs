use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde_json::json;

use crate::analysis::{analyze_fit, write_outputs, FileBody};
use crate::common::{
    non_negative_f64, resolve_binning, BinningArg, InputArgs, MethodArg, NormalizeArg,
};

/// Fit the interval model and score both representations against it.
#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Estimation method.
    #[arg(long, value_enum, default_value_t = MethodArg::SraLs)]
    pub method: MethodArg,

    /// Detector dead time in seconds (raw-data coordinate).
    #[arg(long = "dead-time", value_parser = non_negative_f64, default_value_t = 0.0)]
    pub dead_time: f64,

    /// Whether to divide the sample by its mean before fitting.
    #[arg(long, value_enum, default_value_t = NormalizeArg::Mean)]
    pub normalize: NormalizeArg,

    /// Bin-count rule for the histogram R^2.
    #[arg(long, value_enum, default_value_t = BinningArg::MannWald)]
    pub binning: BinningArg,

    /// Fixed bin count overriding --binning.
    #[arg(long)]
    pub bins: Option<usize>,

    /// Also write the JSON to this file (it always goes to stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: FitArgs) -> Result<i32> {
    let sample = args.input.load()?;
    let rule = resolve_binning(args.binning, args.bins);
    let summary = analyze_fit(
        &sample,
        args.method.to_method(),
        matches!(args.normalize, NormalizeArg::Mean),
        args.dead_time,
        rule,
    )?;

    let report = json!({
        "schema": "sra-kit/1",
        "command": "fit",
        "input": args.input.input.display().to_string(),
        "fit": summary.to_json(),
    });
    let text = format!("{:#}\n", report);
    print!("{text}");

    if let Some(out) = &args.out {
        let dir = out.parent().filter(|p| !p.as_os_str().is_empty());
        let name = out
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "fit.json".to_string());
        write_outputs(
            dir.unwrap_or_else(|| std::path::Path::new(".")),
            vec![(name, FileBody::Text(text))],
        )?;
    }
    Ok(0)
}
