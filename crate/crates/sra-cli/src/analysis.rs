//! Analysis stages shared between subcommands, plus output assembly.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Value};

use sra_kit::{
    build_histogram, build_sra, fit_mle, fit_sra_least_squares, normalize_to_mean,
    normalized_coordinate, r2_hist, write_record, BinningRule, FitMethod, IntervalSample,
    StabilityCurve, TimeUnit,
};

use crate::json::{csv, num, num_or_null};

/// One fitted model evaluated against both representations.
pub struct FitSummary {
    pub method: FitMethod,
    pub normalized: bool,
    /// Dead time in raw seconds, as given on the command line.
    pub dead_time_s: f64,
    /// Dead time in the fitted coordinate (scaled when normalizing).
    pub dead_time_fit: f64,
    pub block_n: usize,
    pub n_used: usize,
    /// Rate in the fitted coordinate.
    pub lambda_hat: f64,
    /// Rate converted back to 1/s.
    pub lambda_hat_per_s: f64,
    pub r2_sra: f64,
    pub r2_hist: f64,
    pub bins: usize,
    pub rule: BinningRule,
}

impl FitSummary {
    pub fn residual_sra(&self) -> f64 {
        1.0 - self.r2_sra
    }

    pub fn residual_hist(&self) -> f64 {
        1.0 - self.r2_hist
    }

    /// `(1 - R2_hist) / (1 - R2_sra)`; infinite on a perfect ranked fit.
    pub fn residual_ratio(&self) -> f64 {
        self.residual_hist() / self.residual_sra()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "method": self.method.name(),
            "normalize": if self.normalized { "mean" } else { "none" },
            "dead_time_s": num(self.dead_time_s),
            "dead_time_fit": num(self.dead_time_fit),
            "block_n": self.block_n,
            "n_used": self.n_used,
            "lambda_hat": num(self.lambda_hat),
            "lambda_hat_per_s": num(self.lambda_hat_per_s),
            "r2_sra": num(self.r2_sra),
            "residual_sra": num(self.residual_sra()),
            "r2_hist": num(self.r2_hist),
            "residual_hist": num(self.residual_hist()),
            "residual_ratio": num_or_null(self.residual_ratio()),
            "binning": self.rule.name(),
            "bins": self.bins,
        })
    }
}

/// Fits `block` (optionally mean-normalized) and scores the fitted curve
/// against both the ranked sequence and the histogram under `rule`.
pub fn analyze_fit(
    block: &IntervalSample,
    method: FitMethod,
    normalize: bool,
    dead_time_s: f64,
    rule: BinningRule,
) -> Result<FitSummary> {
    let mean = block.mean();
    let (data, dead_time_fit) = if normalize {
        (normalize_to_mean(block), dead_time_s / mean)
    } else {
        (block.clone(), dead_time_s)
    };
    let fit = match method {
        FitMethod::Mle => fit_mle(&data, dead_time_fit)?,
        FitMethod::SraLeastSquares => fit_sra_least_squares(&build_sra(&data), dead_time_fit)?,
    };
    let hist = build_histogram(data.values(), rule, None)?;
    let r2_h = r2_hist(&hist, &fit.model)?;
    let lambda_hat = fit.model.rate();
    Ok(FitSummary {
        method,
        normalized: normalize,
        dead_time_s,
        dead_time_fit,
        block_n: block.len(),
        n_used: fit.n_used,
        lambda_hat,
        lambda_hat_per_s: if normalize { lambda_hat / mean } else { lambda_hat },
        r2_sra: fit.r_squared,
        r2_hist: r2_h,
        bins: hist.bin_count(),
        rule,
    })
}

/// A histogram of the normalized coordinate `z = N (x - min) / (max - min)`,
/// rendered as CSV with the original-seconds edges alongside.
pub struct HistExport {
    pub rule: BinningRule,
    pub bins: usize,
    pub csv: String,
}

pub fn hist_z_export(block: &IntervalSample, rule: BinningRule) -> Result<HistExport> {
    let z = normalized_coordinate(block.values())?;
    let hist = build_histogram(&z, rule, None)?;
    let lo = block.values().iter().copied().fold(f64::INFINITY, f64::min);
    let hi = block
        .values()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let n = block.len() as f64;
    let mut text = String::from("bin,z_lo,z_hi,x_lo_s,x_hi_s,count,density_z\n");
    for (i, pair) in hist.edges.windows(2).enumerate() {
        let to_x = |zv: f64| lo + zv * (hi - lo) / n;
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            i,
            csv(pair[0]),
            csv(pair[1]),
            csv(to_x(pair[0])),
            csv(to_x(pair[1])),
            hist.counts[i],
            csv(hist.densities[i]),
        ));
    }
    Ok(HistExport {
        rule,
        bins: hist.bin_count(),
        csv: text,
    })
}

pub fn stability_csv(curve: &StabilityCurve) -> String {
    let mut text = String::from("N,eps_sra,eps_hist\n");
    for ((&n, &es), &eh) in curve
        .n_grid
        .iter()
        .zip(&curve.eps_sra)
        .zip(&curve.eps_hist)
    {
        text.push_str(&format!("{},{},{}\n", n, csv(es), csv(eh)));
    }
    text
}

pub fn curve_json(curve: &StabilityCurve) -> Value {
    json!({
        "q": curve.q_count,
        "binning": curve.binning.name(),
        "n": curve.n_grid,
        "eps_sra": curve.eps_sra.iter().map(|&v| num(v)).collect::<Vec<_>>(),
        "eps_hist": curve.eps_hist.iter().map(|&v| num(v)).collect::<Vec<_>>(),
    })
}

/// Epsilon values at N = 1000 when the grid contains it, and the dominance
/// verdict at the largest grid length.
pub struct Headline {
    pub at_n: usize,
    pub dominant: bool,
    pub eps_sra_at_1000: Option<f64>,
    pub eps_hist_at_1000: Option<f64>,
}

impl Headline {
    pub fn from_curve(curve: &StabilityCurve) -> Self {
        let last = curve.n_grid.len() - 1;
        let at_1000 = curve.n_grid.iter().position(|&n| n == 1000);
        Headline {
            at_n: curve.n_grid[last],
            dominant: curve.eps_sra[last] < curve.eps_hist[last],
            eps_sra_at_1000: at_1000.map(|i| curve.eps_sra[i]),
            eps_hist_at_1000: at_1000.map(|i| curve.eps_hist[i]),
        }
    }

    pub fn eps_ratio(&self) -> Option<f64> {
        match (self.eps_hist_at_1000, self.eps_sra_at_1000) {
            (Some(h), Some(s)) => Some(h / s),
            _ => None,
        }
    }
}

/// One pending output file.
pub enum FileBody {
    Text(String),
    Record(IntervalSample, TimeUnit),
}

/// Writes every file or none: on failure, files already written are removed.
pub fn write_outputs(dir: &Path, files: Vec<(String, FileBody)>) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written: Vec<PathBuf> = Vec::new();
    for (name, body) in files {
        let path = dir.join(&name);
        let outcome = match body {
            FileBody::Text(text) => {
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
            }
            FileBody::Record(sample, unit) => write_record(&sample, &path, unit)
                .with_context(|| format!("writing {}", path.display())),
        };
        if let Err(err) = outcome {
            for stale in &written {
                let _ = fs::remove_file(stale);
            }
            let _ = fs::remove_file(&path);
            return Err(err);
        }
        written.push(path);
    }
    Ok(written)
}
