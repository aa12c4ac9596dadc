//! Ranked-sequence construction and the rank-based empirical distribution.
//!
//! The sequence of ranged amplitudes (SRA) of a sample `{x_k}` (k = 1..N) is
//! the sample sorted in descending order, `{s_n}` with 1-based rank `n`. It is
//! a lossless representation: sorting discards no values, unlike binning. The
//! rank of a value directly encodes its empirical CDF through the plotting
//! position `F(s_n, N) = (N + 1 - n) / N`.

use crate::error::{Error, Result};

/// A validated record of inter-count time intervals.
///
/// Values are canonical seconds after ingestion; every value is finite and
/// strictly positive and the record is non-empty. These invariants are
/// enforced at construction so downstream code never re-checks them.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSample {
    values: Vec<f64>,
    unit: String,
    source: String,
}

impl IntervalSample {
    /// Wraps raw interval values (seconds), validating positivity and finiteness.
    pub fn new(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        Self::with_unit(values, "s", source)
    }

    /// As [`IntervalSample::new`] with an explicit unit tag (e.g. after
    /// mean-normalization the values are dimensionless).
    pub fn with_unit(
        values: Vec<f64>,
        unit: impl Into<String>,
        source: impl Into<String>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidValue { index, value });
            }
        }
        Ok(Self {
            values,
            unit: unit.into(),
            source: source.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; emptiness is rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Unit tag, `"s"` for ingested data.
    pub fn unit(&self) -> &str {
        &self.unit
    }

    /// Provenance string (file path, generator description, ...).
    pub fn source(&self) -> &str {
        &self.source
    }
}

impl AsRef<[f64]> for IntervalSample {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// A sample sorted non-increasing; index + 1 is the 1-based rank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedSequence {
    values: Vec<f64>,
}

impl RankedSequence {
    /// Wraps an already-descending sequence, validating the ordering.
    ///
    /// Values may be any finite reals (model-generated or normalized data are
    /// admitted, not just raw intervals).
    pub fn from_sorted(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::InvalidValue { index, value });
            }
            if index > 0 && value > values[index - 1] {
                return Err(Error::NotSorted { index });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 1-based rank `n`, or `None` when out of range.
    pub fn value_at_rank(&self, rank: usize) -> Option<f64> {
        if rank == 0 {
            return None;
        }
        self.values.get(rank - 1).copied()
    }
}

impl AsRef<[f64]> for RankedSequence {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// One point of the rank-based empirical distribution function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcdfPoint {
    /// The ranked value `s_n`.
    pub value: f64,
    /// 1-based rank `n`.
    pub rank: usize,
    /// Plotting position `(N + 1 - n) / N`, in (0, 1].
    pub cdf: f64,
}

/// Sorts a sample descending into its SRA.
///
/// The sort is stable, so tied values keep their input order and receive
/// distinct consecutive ranks. The output is the same multiset as the input.
pub fn build_sra(sample: &IntervalSample) -> RankedSequence {
    let mut values = sample.values.clone();
    values.sort_by(|a, b| b.total_cmp(a));
    RankedSequence { values }
}

/// Emits the rank-based empirical CDF, one point per rank.
///
/// `cdf` is exactly `(N + 1 - n) / N`: 1 at rank 1, `1/N` at rank N,
/// strictly decreasing in between.
pub fn ecdf(sra: &RankedSequence) -> Vec<EcdfPoint> {
    let n = sra.values.len();
    sra.values
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let rank = i + 1;
            EcdfPoint {
                value,
                rank,
                cdf: (n - rank + 1) as f64 / n as f64,
            }
        })
        .collect()
}

/// Divides every value by the sample mean, making the output mean 1.
///
/// The mean is strictly positive by the sample invariants, so this never
/// fails. The output unit tag is "dimensionless".
pub fn normalize_to_mean(sample: &IntervalSample) -> IntervalSample {
    let mean = sample.mean();
    let values = sample.values.iter().map(|v| v / mean).collect();
    IntervalSample {
        values,
        unit: "dimensionless".to_string(),
        source: format!("{} [mean-normalized]", sample.source),
    }
}
