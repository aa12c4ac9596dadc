//! Shared flag types and input handling for the subcommands.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use sra_kit::{
    read_record, BinningRule, EdgeAlignment, FitMethod, IntervalSample, RecordFormat, RecordKind,
    TimeUnit,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    /// One inter-count interval per line.
    Intervals,
    /// One absolute timestamp per line; differences become intervals.
    Timestamps,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum UnitArg {
    S,
    Ms,
    Us,
    Ns,
}

impl UnitArg {
    pub fn to_unit(self) -> TimeUnit {
        match self {
            UnitArg::S => TimeUnit::Seconds,
            UnitArg::Ms => TimeUnit::Milliseconds,
            UnitArg::Us => TimeUnit::Microseconds,
            UnitArg::Ns => TimeUnit::Nanoseconds,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BinningArg {
    Sturges,
    MannWald,
    MaxTenth,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EdgesArg {
    /// Bin each subsample over its own range (rows aligned by bin index).
    PerSubsample,
    /// One shared edge grid over the pooled range of all subsamples.
    Pooled,
}

impl EdgesArg {
    pub fn to_alignment(self) -> EdgeAlignment {
        match self {
            EdgesArg::PerSubsample => EdgeAlignment::PerSubsample,
            EdgesArg::Pooled => EdgeAlignment::Pooled,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    /// Least squares in rank coordinates.
    SraLs,
    /// Closed-form maximum likelihood.
    Mle,
}

impl MethodArg {
    pub fn to_method(self) -> FitMethod {
        match self {
            MethodArg::SraLs => FitMethod::SraLeastSquares,
            MethodArg::Mle => FitMethod::Mle,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormalizeArg {
    /// Divide the sample by its mean before fitting.
    Mean,
    /// Fit the raw values.
    None,
}

/// Input record location and interpretation.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input record file.
    #[arg(long)]
    pub input: PathBuf,

    /// Meaning of the input lines.
    #[arg(long, value_enum, default_value_t = FormatArg::Intervals)]
    pub format: FormatArg,

    /// Unit of the input values.
    #[arg(long, value_enum, default_value_t = UnitArg::S)]
    pub unit: UnitArg,
}

impl InputArgs {
    pub fn load(&self) -> Result<IntervalSample> {
        load_record(&self.input, self.format, self.unit)
    }
}

pub fn load_record(path: &Path, format: FormatArg, unit: UnitArg) -> Result<IntervalSample> {
    let format = RecordFormat {
        kind: match format {
            FormatArg::Intervals => RecordKind::Intervals,
            FormatArg::Timestamps => RecordKind::Timestamps,
        },
        unit: unit.to_unit(),
    };
    read_record(path, format).with_context(|| format!("reading {}", path.display()))
}

/// Resolves the `--binning` / `--bins` pair into one rule.
pub fn resolve_binning(binning: BinningArg, bins: Option<usize>) -> BinningRule {
    match bins {
        Some(k) => BinningRule::Explicit(k),
        None => match binning {
            BinningArg::Sturges => BinningRule::Sturges,
            BinningArg::MannWald => BinningRule::MannWald,
            BinningArg::MaxTenth => BinningRule::MaxTenth,
        },
    }
}

/// Parses an inclusive `START:END:STEP` grid specification.
pub fn parse_grid(spec: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("grid must be START:END:STEP, got {spec:?}");
    }
    let start: usize = parts[0].parse().context("grid START")?;
    let end: usize = parts[1].parse().context("grid END")?;
    let step: usize = parts[2].parse().context("grid STEP")?;
    if start == 0 || step == 0 || end < start {
        bail!("grid must satisfy 1 <= START <= END and STEP >= 1, got {spec:?}");
    }
    Ok((start..=end).step_by(step).collect())
}

/// clap value parser for strictly positive floats.
pub fn positive_f64(text: &str) -> std::result::Result<f64, String> {
    let value: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("must be a finite positive number, got {text}"))
    }
}

/// clap value parser for finite non-negative floats.
pub fn non_negative_f64(text: &str) -> std::result::Result<f64, String> {
    let value: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(format!("must be a finite non-negative number, got {text}"))
    }
}

/// clap value parser for efficiencies in (0, 1].
pub fn efficiency_f64(text: &str) -> std::result::Result<f64, String> {
    let value: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if value.is_finite() && value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(format!("must be in (0, 1], got {text}"))
    }
}
