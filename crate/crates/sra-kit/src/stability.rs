//! Subsample stability of the ranked-sequence and histogram representations.
//!
//! A record is cut into Q equal-length subsamples. For rows `x_{q,k}` with
//! column means `y_k` and grand mean `y`, the deviation factor
//!
//! ```text
//! eps = [ Q^-1 sum_k sum_q (x_{q,k} - y_k)^2 ] / [ sum_k (y_k - y)^2 ]
//! ```
//!
//! measures within-ensemble scatter against across-index variance. Applied to
//! the Q ranked subsamples it scores the ranked representation; applied to the
//! Q histogram count rows it scores the binned one. Sweeping the subsample
//! length N yields the stability curve.
//!
//! With the `parallel` feature (default) the grid points of a curve are
//! evaluated on the rayon thread pool; results are merged in grid order and
//! are bit-identical to the serial path.

use crate::binning::{bin_counts, equal_width_edges, span, BinningRule};
use crate::error::{Error, Result};
use crate::ranked::IntervalSample;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Q equal-length subsamples cut from one record, stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsampleSet {
    data: Vec<f64>,
    q_count: usize,
    n_len: usize,
}

impl SubsampleSet {
    pub fn q_count(&self) -> usize {
        self.q_count
    }

    /// Length N of each subsample.
    pub fn subsample_len(&self) -> usize {
        self.n_len
    }

    /// The q-th subsample (0-based).
    pub fn row(&self, q: usize) -> &[f64] {
        &self.data[q * self.n_len..(q + 1) * self.n_len]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n_len)
    }

    /// All Q*N values, row-major.
    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// How histogram rows are aligned across the Q subsamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeAlignment {
    /// Each subsample is binned over its own [min, max]; rows are aligned by
    /// bin index. This is the default and reproduces the reference stability
    /// figures on synthetic data.
    #[default]
    PerSubsample,
    /// One edge grid over the pooled range of all Q subsamples.
    Pooled,
}

impl EdgeAlignment {
    pub fn name(&self) -> &'static str {
        match self {
            EdgeAlignment::PerSubsample => "per-subsample",
            EdgeAlignment::Pooled => "pooled",
        }
    }
}

/// Stability of both representations over a grid of subsample lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityCurve {
    pub n_grid: Vec<usize>,
    pub eps_sra: Vec<f64>,
    pub eps_hist: Vec<f64>,
    pub q_count: usize,
    pub binning: BinningRule,
}

/// Cuts the first `q` contiguous non-overlapping blocks of length `n`.
pub fn split_subsamples(sample: &IntervalSample, q: usize, n: usize) -> Result<SubsampleSet> {
    if q < 2 {
        return Err(Error::TooFewSubsamples { got: q });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let need = q * n;
    let got = sample.len();
    if need > got {
        return Err(Error::InsufficientData { q, n, need, got });
    }
    Ok(SubsampleSet {
        data: sample.values()[..need].to_vec(),
        q_count: q,
        n_len: n,
    })
}

/// The relative quadratic deviation factor of Q equal-length rows.
///
/// Zero iff all rows are identical; errors when the averaged row is constant
/// (the denominator vanishes). Scale-invariant: multiplying every entry by a
/// common factor leaves the result unchanged.
pub fn deviation_factor<R: AsRef<[f64]>>(rows: &[R]) -> Result<f64> {
    let q = rows.len();
    if q < 2 {
        return Err(Error::TooFewSubsamples { got: q });
    }
    let len = rows[0].as_ref().len();
    if len < 2 {
        return Err(Error::RowsTooShort { got: len });
    }
    for row in rows {
        let got = row.as_ref().len();
        if got != len {
            return Err(Error::UnequalRowLengths { expected: len, got });
        }
    }

    // Identical rows have zero scatter by definition; return the exact 0
    // rather than the rounding residue of mean subtraction.
    if rows[1..].iter().all(|r| r.as_ref() == rows[0].as_ref()) {
        let first = rows[0].as_ref();
        if first.iter().all(|&v| v == first[0]) {
            return Err(Error::DegenerateDenominator);
        }
        return Ok(0.0);
    }

    let mut col_mean = vec![0.0f64; len];
    for row in rows {
        for (mean, &v) in col_mean.iter_mut().zip(row.as_ref()) {
            *mean += v;
        }
    }
    let qf = q as f64;
    for mean in &mut col_mean {
        *mean /= qf;
    }

    let grand = col_mean.iter().sum::<f64>() / len as f64;
    let denominator: f64 = col_mean.iter().map(|&y| (y - grand) * (y - grand)).sum();
    if denominator == 0.0 {
        return Err(Error::DegenerateDenominator);
    }

    let mut numerator = 0.0;
    for row in rows {
        for (&mean, &v) in col_mean.iter().zip(row.as_ref()) {
            numerator += (v - mean) * (v - mean);
        }
    }
    Ok(numerator / qf / denominator)
}

/// Deviation factor of the Q ranked subsamples (row index = rank).
pub fn epsilon_sra(set: &SubsampleSet) -> Result<f64> {
    let mut buf = set.data.clone();
    for chunk in buf.chunks_exact_mut(set.n_len) {
        chunk.sort_by(|a, b| b.total_cmp(a));
    }
    let rows: Vec<&[f64]> = buf.chunks_exact(set.n_len).collect();
    deviation_factor(&rows)
}

/// Deviation factor of the Q histogram count rows under `rule`, with edges
/// aligned per subsample (see [`EdgeAlignment::PerSubsample`]).
pub fn epsilon_hist(set: &SubsampleSet, rule: BinningRule) -> Result<f64> {
    epsilon_hist_aligned(set, rule, EdgeAlignment::PerSubsample)
}

/// As [`epsilon_hist`] with an explicit edge-alignment choice.
pub fn epsilon_hist_aligned(
    set: &SubsampleSet,
    rule: BinningRule,
    alignment: EdgeAlignment,
) -> Result<f64> {
    let bins = rule.bin_count(set.n_len)?;
    if bins < 2 {
        return Err(Error::TooFewBins { need: 2, got: bins });
    }
    let count_row = |row: &[f64], edges: &[f64]| -> Vec<f64> {
        bin_counts(row, edges).into_iter().map(|c| c as f64).collect()
    };
    let rows: Vec<Vec<f64>> = match alignment {
        EdgeAlignment::PerSubsample => {
            let mut rows = Vec::with_capacity(set.q_count);
            for row in set.rows() {
                let (lo, hi) = span(row)?;
                let edges = equal_width_edges(lo, hi, bins)?;
                rows.push(count_row(row, &edges));
            }
            rows
        }
        EdgeAlignment::Pooled => {
            let (lo, hi) = span(&set.data)?;
            let edges = equal_width_edges(lo, hi, bins)?;
            set.rows().map(|row| count_row(row, &edges)).collect()
        }
    };
    deviation_factor(&rows)
}

/// The default subsample-length grid, 20 to 1000 in steps of 20.
pub fn default_grid() -> Vec<usize> {
    (1..=50).map(|j| 20 * j).collect()
}

/// Stability curve over `n_grid`, parallel across grid points when the
/// `parallel` feature is enabled.
pub fn stability_curve(
    sample: &IntervalSample,
    q: usize,
    n_grid: &[usize],
    rule: BinningRule,
) -> Result<StabilityCurve> {
    stability_curve_aligned(sample, q, n_grid, rule, EdgeAlignment::default())
}

/// As [`stability_curve`] with an explicit histogram edge alignment.
pub fn stability_curve_aligned(
    sample: &IntervalSample,
    q: usize,
    n_grid: &[usize],
    rule: BinningRule,
    alignment: EdgeAlignment,
) -> Result<StabilityCurve> {
    #[cfg(feature = "parallel")]
    let points: Vec<(f64, f64)> = n_grid
        .par_iter()
        .map(|&n| curve_point(sample, q, n, rule, alignment))
        .collect::<Result<_>>()?;

    #[cfg(not(feature = "parallel"))]
    let points: Vec<(f64, f64)> = n_grid
        .iter()
        .map(|&n| curve_point(sample, q, n, rule, alignment))
        .collect::<Result<_>>()?;

    Ok(assemble_curve(n_grid, points, q, rule))
}

/// Single-threaded stability curve; output is bit-identical to
/// [`stability_curve`].
pub fn stability_curve_serial(
    sample: &IntervalSample,
    q: usize,
    n_grid: &[usize],
    rule: BinningRule,
) -> Result<StabilityCurve> {
    stability_curve_serial_aligned(sample, q, n_grid, rule, EdgeAlignment::default())
}

/// As [`stability_curve_serial`] with an explicit edge alignment.
pub fn stability_curve_serial_aligned(
    sample: &IntervalSample,
    q: usize,
    n_grid: &[usize],
    rule: BinningRule,
    alignment: EdgeAlignment,
) -> Result<StabilityCurve> {
    let points: Vec<(f64, f64)> = n_grid
        .iter()
        .map(|&n| curve_point(sample, q, n, rule, alignment))
        .collect::<Result<_>>()?;
    Ok(assemble_curve(n_grid, points, q, rule))
}

fn curve_point(
    sample: &IntervalSample,
    q: usize,
    n: usize,
    rule: BinningRule,
    alignment: EdgeAlignment,
) -> Result<(f64, f64)> {
    let set = split_subsamples(sample, q, n)?;
    Ok((
        epsilon_sra(&set)?,
        epsilon_hist_aligned(&set, rule, alignment)?,
    ))
}

fn assemble_curve(
    n_grid: &[usize],
    points: Vec<(f64, f64)>,
    q: usize,
    rule: BinningRule,
) -> StabilityCurve {
    let (eps_sra, eps_hist) = points.into_iter().unzip();
    StabilityCurve {
        n_grid: n_grid.to_vec(),
        eps_sra,
        eps_hist,
        q_count: q,
        binning: rule,
    }
}
