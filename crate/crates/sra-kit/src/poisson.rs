//! Poisson-process model of dark counts: interval density, the closed-form
//! ranked-sequence curve, rate estimation, and goodness of fit.
//!
//! For a Poisson process of rate `lambda` behind a non-paralyzable dead time
//! `t_d`, intervals follow the shifted exponential with density
//! `lambda * exp(-lambda (x - t_d))` for `x >= t_d`. The expected descending
//! ranked value at rank `n` out of `N` is `t_d + ln(N / (n - 1)) / lambda`;
//! rank 1 diverges, so every fit and goodness-of-fit sum runs over ranks
//! `2..=N`.

use crate::error::{Error, Result};
use crate::ranked::{build_sra, IntervalSample, RankedSequence};
use crate::Histogram;

/// A shifted-exponential interval model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonModel {
    rate: f64,
    dead_time: f64,
}

impl PoissonModel {
    pub fn new(rate: f64, dead_time: f64) -> Result<Self> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::NonPositiveRate(rate));
        }
        if !dead_time.is_finite() || dead_time < 0.0 {
            return Err(Error::NegativeDeadTime(dead_time));
        }
        Ok(Self { rate, dead_time })
    }

    /// Average count frequency `lambda` (1/s).
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Dead-time shift `t_d` (s).
    pub fn dead_time(&self) -> f64 {
        self.dead_time
    }
}

/// How a [`PoissonFit`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMethod {
    /// Closed-form maximum likelihood, `1 / (mean - t_d)`.
    Mle,
    /// Least squares against the ranked-sequence curve.
    SraLeastSquares,
}

impl FitMethod {
    pub fn name(&self) -> &'static str {
        match self {
            FitMethod::Mle => "mle",
            FitMethod::SraLeastSquares => "sra-ls",
        }
    }
}

/// A fitted model with its goodness of fit in rank coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonFit {
    pub model: PoissonModel,
    pub method: FitMethod,
    /// Coefficient of determination against the ranked sequence, <= 1.
    pub r_squared: f64,
    /// Number of data points entering the fit.
    pub n_used: usize,
}

impl PoissonFit {
    /// The fraction of errors `1 - R^2`.
    pub fn residual_fraction(&self) -> f64 {
        1.0 - self.r_squared
    }
}

/// Interval density `lambda * exp(-lambda (x - t_d))`, zero below the dead time.
pub fn model_density(model: &PoissonModel, x: f64) -> f64 {
    if x < model.dead_time {
        0.0
    } else {
        model.rate * (-model.rate * (x - model.dead_time)).exp()
    }
}

/// Expected ranked value `t_d + ln(N / (n - 1)) / lambda` at rank `n` of `N`.
///
/// Rank 1 diverges and is rejected; ranks beyond `n_total` are out of range.
pub fn model_sra(model: &PoissonModel, n_total: usize, rank: usize) -> Result<f64> {
    if rank < 2 {
        return Err(Error::DivergentRank);
    }
    if rank > n_total {
        return Err(Error::RankOutOfRange { rank, n: n_total });
    }
    Ok(sra_value(model, n_total, rank))
}

/// Unchecked core of [`model_sra`]; callers guarantee `2 <= rank <= n_total`.
fn sra_value(model: &PoissonModel, n_total: usize, rank: usize) -> f64 {
    model.dead_time + (n_total as f64 / (rank - 1) as f64).ln() / model.rate
}

/// Standard coefficient of determination `1 - SS_res / SS_tot`.
///
/// Errors with [`Error::DegenerateVariance`] when the observations carry no
/// variance at all.
pub fn r_squared(observed: &[f64], predicted: &[f64]) -> Result<f64> {
    if observed.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            observed: observed.len(),
            predicted: predicted.len(),
        });
    }
    let mean = observed.iter().sum::<f64>() / observed.len() as f64;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (&obs, &pred) in observed.iter().zip(predicted) {
        ss_res += (obs - pred) * (obs - pred);
        ss_tot += (obs - mean) * (obs - mean);
    }
    if ss_tot == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok(1.0 - ss_res / ss_tot)
}

/// R^2 of a ranked sequence against the model curve over ranks `2..=N`.
pub fn r2_sra(sra: &RankedSequence, model: &PoissonModel) -> Result<f64> {
    let n = sra.len();
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    let observed = &sra.values()[1..];
    let predicted: Vec<f64> = (2..=n).map(|rank| sra_value(model, n, rank)).collect();
    r_squared(observed, &predicted)
}

/// R^2 of histogram densities against the model density at the bin centers.
pub fn r2_hist(hist: &Histogram, model: &PoissonModel) -> Result<f64> {
    let bins = hist.bin_count();
    if bins < 3 {
        return Err(Error::TooFewBins { need: 3, got: bins });
    }
    let predicted: Vec<f64> = hist
        .centers()
        .iter()
        .map(|&c| model_density(model, c))
        .collect();
    r_squared(&hist.densities, &predicted)
}

/// Maximum-likelihood rate `1 / (mean - t_d)` with R^2 taken in rank coordinates.
pub fn fit_mle(sample: &IntervalSample, dead_time: f64) -> Result<PoissonFit> {
    if !dead_time.is_finite() || dead_time < 0.0 {
        return Err(Error::NegativeDeadTime(dead_time));
    }
    let mean = sample.mean();
    if mean <= dead_time {
        return Err(Error::InconsistentDeadTime { mean, dead_time });
    }
    let model = PoissonModel::new(1.0 / (mean - dead_time), dead_time)?;
    let r_squared = r2_sra(&build_sra(sample), &model)?;
    Ok(PoissonFit {
        model,
        method: FitMethod::Mle,
        r_squared,
        n_used: sample.len(),
    })
}

/// Least-squares rate in rank coordinates.
///
/// With `a_n = ln(N / (n - 1))` and `t_n = s_n - t_d` over ranks `2..=N`, the
/// best scale is `c* = sum(a t) / sum(a^2)` for the one-parameter line
/// `t = c a`, and the rate estimate is `1 / c*`.
pub fn fit_sra_least_squares(sra: &RankedSequence, dead_time: f64) -> Result<PoissonFit> {
    if !dead_time.is_finite() || dead_time < 0.0 {
        return Err(Error::NegativeDeadTime(dead_time));
    }
    let n = sra.len();
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    let mut sum_aa = 0.0;
    let mut sum_at = 0.0;
    for (i, &s) in sra.values().iter().enumerate().skip(1) {
        let rank = i + 1;
        let a = (n as f64 / (rank - 1) as f64).ln();
        sum_aa += a * a;
        sum_at += a * (s - dead_time);
    }
    if sum_at <= 0.0 {
        return Err(Error::NonPositiveScale);
    }
    let model = PoissonModel::new(sum_aa / sum_at, dead_time)?;
    let r_squared = r2_sra(sra, &model)?;
    Ok(PoissonFit {
        model,
        method: FitMethod::SraLeastSquares,
        r_squared,
        n_used: n - 1,
    })
}
