use std::path::PathBuf;
use std::time::Instant;

use anyhow::Result;
use clap::{ArgGroup, Args};
use serde_json::json;

use sra_kit::{
    simulate_intervals, stability_curve_aligned, BinningRule, DetectorConfig, IntervalSample,
    TimeUnit,
};

use crate::analysis::{
    analyze_fit, curve_json, hist_z_export, stability_csv, write_outputs, FileBody, Headline,
};
use crate::common::{
    efficiency_f64, load_record, non_negative_f64, parse_grid, positive_f64, resolve_binning,
    BinningArg, EdgesArg, FormatArg, MethodArg, NormalizeArg, UnitArg,
};
use crate::json::{num_or_null, opt_num};

/// Full comparison pipeline: stability sweep, model fit, histogram exports.
///
/// Exits 0 when the ranked representation is the more stable one at the
/// largest grid length, 1 otherwise.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "simulate"])))]
pub struct ReportArgs {
    /// Input record file.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Meaning of the input lines.
    #[arg(long, value_enum, default_value_t = FormatArg::Intervals)]
    pub format: FormatArg,

    /// Unit of the input values.
    #[arg(long, value_enum, default_value_t = UnitArg::S)]
    pub unit: UnitArg,

    /// Generate the record instead of reading one.
    #[arg(long)]
    pub simulate: bool,

    /// Dark-count rate for --simulate (counts/s).
    #[arg(long, value_parser = positive_f64, default_value_t = 5000.0)]
    pub rate: f64,

    /// Dead time in seconds, used for generation and for the fit.
    /// Defaults to 2.4e-5 with --simulate and 0 with --input.
    #[arg(long = "dead-time", value_parser = non_negative_f64)]
    pub dead_time: Option<f64>,

    /// Number of events for --simulate.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 100_000)]
    pub n: u64,

    /// Detector efficiency metadata for --simulate.
    #[arg(long, value_parser = efficiency_f64, default_value_t = 0.15)]
    pub efficiency: f64,

    /// Generator seed for --simulate.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of contiguous subsamples per grid point.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), default_value_t = 100)]
    pub q: u64,

    /// Subsample-length grid as START:END:STEP (inclusive).
    #[arg(long, default_value = "20:1000:20")]
    pub grid: String,

    /// Bin-count rule for histogram rows and the fit comparison.
    #[arg(long, value_enum, default_value_t = BinningArg::MannWald)]
    pub binning: BinningArg,

    /// Fixed bin count overriding --binning.
    #[arg(long)]
    pub bins: Option<usize>,

    /// Histogram edge alignment across subsamples.
    #[arg(long = "hist-edges", value_enum, default_value_t = EdgesArg::PerSubsample)]
    pub hist_edges: EdgesArg,

    /// Estimation method for the fit stage.
    #[arg(long, value_enum, default_value_t = MethodArg::SraLs)]
    pub method: MethodArg,

    /// Whether the fit stage divides its block by the block mean.
    #[arg(long, value_enum, default_value_t = NormalizeArg::Mean)]
    pub normalize: NormalizeArg,

    /// Directory for report.json, stability.csv and the histogram CSVs.
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

pub fn run(args: ReportArgs) -> Result<i32> {
    let total_start = Instant::now();
    let dead_time_s = args
        .dead_time
        .unwrap_or(if args.simulate { 2.4e-5 } else { 0.0 });

    // Source stage.
    let stage = Instant::now();
    let (sample, source_echo) = if args.simulate {
        let config = DetectorConfig {
            dark_rate: args.rate,
            dead_time: dead_time_s,
            efficiency: args.efficiency,
            n_events: args.n as usize,
            seed: args.seed,
        };
        let sample = simulate_intervals(&config)?;
        let echo = json!({
            "source": "simulate",
            "rate": crate::json::num(args.rate),
            "dead_time_s": crate::json::num(dead_time_s),
            "n_events": config.n_events,
            "efficiency": crate::json::num(args.efficiency),
            "seed": args.seed,
        });
        (sample, echo)
    } else {
        let path = args.input.as_ref().expect("clap enforces the source group");
        let sample = load_record(path, args.format, args.unit)?;
        let echo = json!({
            "source": path.display().to_string(),
            "n_events": sample.len(),
            "dead_time_s": crate::json::num(dead_time_s),
        });
        (sample, echo)
    };
    let source_ms = stage.elapsed().as_millis() as u64;

    // Stability stage.
    let stage = Instant::now();
    let grid = parse_grid(&args.grid)?;
    let rule = resolve_binning(args.binning, args.bins);
    let alignment = args.hist_edges.to_alignment();
    let curve = stability_curve_aligned(&sample, args.q as usize, &grid, rule, alignment)?;
    let headline = Headline::from_curve(&curve);
    let stability_ms = stage.elapsed().as_millis() as u64;

    // Fit stage on the leading block, as in the reference comparison.
    let stage = Instant::now();
    let block_len = sample.len().min(1000);
    let block = IntervalSample::new(
        sample.values()[..block_len].to_vec(),
        format!("first {block_len} values of {}", sample.source()),
    )?;
    let fit = analyze_fit(
        &block,
        args.method.to_method(),
        matches!(args.normalize, NormalizeArg::Mean),
        dead_time_s,
        rule,
    )?;
    let fit_ms = stage.elapsed().as_millis() as u64;

    // Histogram exports of the same block under both reference rules.
    let stage = Instant::now();
    let hist_exports = [
        ("hist_sturges.csv", hist_z_export(&block, BinningRule::Sturges)?),
        (
            "hist_mann_wald.csv",
            hist_z_export(&block, BinningRule::MannWald)?,
        ),
    ];
    let histograms_ms = stage.elapsed().as_millis() as u64;

    let report = json!({
        "schema": "sra-kit/1",
        "command": "report",
        "config": {
            "data": source_echo,
            "q": args.q,
            "grid": args.grid,
            "binning": rule.name(),
            "hist_edges": alignment.name(),
            "method": args.method.to_method().name(),
            "normalize": if matches!(args.normalize, NormalizeArg::Mean) { "mean" } else { "none" },
        },
        "curve": curve_json(&curve),
        "eps_sra_at_1000": opt_num(headline.eps_sra_at_1000),
        "eps_hist_at_1000": opt_num(headline.eps_hist_at_1000),
        "eps_ratio": opt_num(headline.eps_ratio()),
        "dominance": { "at_n": headline.at_n, "sra_dominates": headline.dominant },
        "fit": fit.to_json(),
        "residual_ratio": num_or_null(fit.residual_ratio()),
        "histograms": hist_exports.iter().map(|(name, h)| json!({
            "rule": h.rule.name(),
            "bins": h.bins,
            "file": name,
        })).collect::<Vec<_>>(),
        "timings_ms": {
            "source": source_ms,
            "stability": stability_ms,
            "fit": fit_ms,
            "histograms": histograms_ms,
            "total": total_start.elapsed().as_millis() as u64,
        },
    });

    let mut outputs = vec![
        ("stability.csv".to_string(), FileBody::Text(stability_csv(&curve))),
        (
            "report.json".to_string(),
            FileBody::Text(format!("{:#}\n", report)),
        ),
    ];
    for (name, export) in hist_exports {
        outputs.push((name.to_string(), FileBody::Text(export.csv)));
    }
    if args.simulate {
        outputs.push((
            "intervals.txt".to_string(),
            FileBody::Record(sample, TimeUnit::Seconds),
        ));
    }
    write_outputs(&args.out_dir, outputs)?;

    println!(
        "report written to {} ({} grid points, Q={}, {} binning)",
        args.out_dir.join("report.json").display(),
        curve.n_grid.len(),
        args.q,
        rule.name(),
    );
    match (headline.eps_sra_at_1000, headline.eps_hist_at_1000) {
        (Some(s), Some(h)) => println!(
            "eps_sra(1000)={s:.5}, eps_hist(1000)={h:.5}, ratio={:.2}",
            h / s
        ),
        _ => {
            let last = curve.n_grid.len() - 1;
            println!(
                "eps_sra(N={at})={:.5}, eps_hist(N={at})={:.5}",
                curve.eps_sra[last],
                curve.eps_hist[last],
                at = headline.at_n,
            );
        }
    }
    println!(
        "ranked representation {} at N={}; fit residual ratio {:.2}",
        if headline.dominant {
            "dominates"
        } else {
            "does not dominate"
        },
        headline.at_n,
        fit.residual_ratio(),
    );
    Ok(if headline.dominant { 0 } else { 1 })
}
