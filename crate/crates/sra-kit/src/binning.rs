//! Histogram construction under the partitioning criteria used in the
//! stability comparison: Sturges, Mann-Wald, and the maximum N/10 rule.
//!
//! Bins are equal-width over the sample range by default. The intervals are
//! right-open except the last, which is closed so the maximum lands in a bin
//! and counts are conserved. Bin membership depends only on a value and the
//! edges, never on input order, so a histogram of a sample and of its ranked
//! (sorted) form are identical bit for bit.

use crate::error::{Error, Result};

/// A rule determining the number of bins `N_h` from the sample size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinningRule {
    /// `ceil(log2 N) + 1`.
    Sturges,
    /// Round-half-up of `4 * (3 (N-1)^2 / 4)^(1/5)`.
    MannWald,
    /// The maximum partitioning `floor(N / 10)`.
    MaxTenth,
    /// A fixed bin count (must be >= 1).
    Explicit(usize),
}

impl BinningRule {
    /// Number of bins this rule prescribes for a sample of `n` points.
    pub fn bin_count(&self, n: usize) -> Result<usize> {
        match *self {
            BinningRule::Sturges => Ok(bins_sturges(n)),
            BinningRule::MannWald => bins_mann_wald(n),
            BinningRule::MaxTenth => bins_max_tenth(n),
            BinningRule::Explicit(k) => {
                if k < 1 {
                    Err(Error::TooFewBins { need: 1, got: k })
                } else {
                    Ok(k)
                }
            }
        }
    }

    /// Stable lowercase name, used in file outputs.
    pub fn name(&self) -> &'static str {
        match self {
            BinningRule::Sturges => "sturges",
            BinningRule::MannWald => "mann-wald",
            BinningRule::MaxTenth => "max-tenth",
            BinningRule::Explicit(_) => "explicit",
        }
    }
}

/// Sturges' bin count `ceil(log2 n) + 1`, computed in integer arithmetic.
///
/// `bins_sturges(1)` is 1, the formula's own value.
pub fn bins_sturges(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let ceil_log2 = usize::BITS - (n - 1).leading_zeros();
    ceil_log2 as usize + 1
}

/// Mann-Wald bin count, rounded half-up so the worked value at N = 1000 is 60.
pub fn bins_mann_wald(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::TooFewPoints { need: 2, got: n });
    }
    let m = (n - 1) as f64;
    let raw = 4.0 * (3.0 * m * m / 4.0).powf(0.2);
    Ok((raw + 0.5).floor() as usize)
}

/// Maximum partitioning `floor(n / 10)`.
pub fn bins_max_tenth(n: usize) -> Result<usize> {
    if n < 10 {
        return Err(Error::TooFewPoints { need: 10, got: n });
    }
    Ok(n / 10)
}

/// A binned view of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// `N_h + 1` strictly increasing edges covering the data.
    pub edges: Vec<f64>,
    /// Occupancy per bin; sums to the source sample size.
    pub counts: Vec<u64>,
    /// `count / (N * width)` per bin; integrates to 1 over the edges.
    pub densities: Vec<f64>,
    /// The rule the bin count came from.
    pub rule: BinningRule,
    /// Source sample size `N`.
    pub n_source: usize,
}

impl Histogram {
    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    /// Midpoints of the bins.
    pub fn centers(&self) -> Vec<f64> {
        self.edges
            .windows(2)
            .map(|pair| 0.5 * (pair[0] + pair[1]))
            .collect()
    }
}

/// Builds a histogram of `values` under `rule`.
///
/// Without `edges_override` the bins are equal-width over `[min, max]` of the
/// data. An override must be strictly increasing and cover the data range;
/// it is used to bin several samples against one shared grid.
pub fn build_histogram(
    values: &[f64],
    rule: BinningRule,
    edges_override: Option<&[f64]>,
) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (lo, hi) = span(values)?;
    let edges = match edges_override {
        Some(given) => {
            validate_edges(given)?;
            if given[0] > lo || *given.last().unwrap() < hi {
                return Err(Error::EdgesDoNotCover { lo, hi });
            }
            given.to_vec()
        }
        None => equal_width_edges(lo, hi, rule.bin_count(values.len())?)?,
    };
    let counts = bin_counts(values, &edges);
    let n = values.len() as f64;
    let densities = counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, pair)| c as f64 / (n * (pair[1] - pair[0])))
        .collect();
    Ok(Histogram {
        edges,
        counts,
        densities,
        rule,
        n_source: values.len(),
    })
}

/// Maps each value to `z = N (x - x_min) / (x_max - x_min)`, spanning [0, N].
pub fn normalized_coordinate(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (lo, hi) = span(values)?;
    let n = values.len() as f64;
    Ok(values.iter().map(|&x| n * (x - lo) / (hi - lo)).collect())
}

/// Min and max of a non-empty slice; errors when the range is zero.
pub(crate) fn span(values: &[f64]) -> Result<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo >= hi {
        return Err(Error::DegenerateRange);
    }
    Ok((lo, hi))
}

/// `k + 1` equal-width edges with the endpoints pinned exactly to `lo`, `hi`.
pub(crate) fn equal_width_edges(lo: f64, hi: f64, k: usize) -> Result<Vec<f64>> {
    let width = hi - lo;
    let mut edges = Vec::with_capacity(k + 1);
    edges.push(lo);
    for i in 1..k {
        edges.push(lo + width * (i as f64 / k as f64));
    }
    edges.push(hi);
    // A range of a few ulps cannot host k distinct edges.
    for pair in edges.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::DegenerateRange);
        }
    }
    Ok(edges)
}

/// Counts values into right-open bins; the last bin is closed on the right.
///
/// Membership is a pure function of (value, edges), so the result does not
/// depend on input order. Values are assumed covered by the edges.
pub(crate) fn bin_counts(values: &[f64], edges: &[f64]) -> Vec<u64> {
    let k = edges.len() - 1;
    let mut counts = vec![0u64; k];
    for &v in values {
        let idx = edges.partition_point(|&e| e <= v);
        debug_assert!(idx >= 1, "value below the first edge");
        counts[(idx - 1).min(k - 1)] += 1;
    }
    counts
}

fn validate_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::TooFewBins {
            need: 1,
            got: edges.len().saturating_sub(1),
        });
    }
    for (index, pair) in edges.windows(2).enumerate() {
        // partial_cmp rejects NaN edges along with non-increasing ones.
        if pair[0].partial_cmp(&pair[1]) != Some(std::cmp::Ordering::Less) {
            return Err(Error::EdgesNotIncreasing { index: index + 1 });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturges_reference_values() {
        assert_eq!(bins_sturges(1000), 11);
        assert_eq!(bins_sturges(1), 1);
        assert_eq!(bins_sturges(1024), 11);
        assert_eq!(bins_sturges(2), 2);
        assert_eq!(bins_sturges(1025), 12);
    }

    #[test]
    fn mann_wald_reference_values() {
        assert_eq!(bins_mann_wald(1000).unwrap(), 60);
        assert_eq!(bins_mann_wald(20).unwrap(), 12);
        assert_eq!(bins_mann_wald(2).unwrap(), 4);
        assert!(matches!(
            bins_mann_wald(1),
            Err(Error::TooFewPoints { need: 2, got: 1 })
        ));
    }

    #[test]
    fn mann_wald_is_monotonic() {
        let mut prev = bins_mann_wald(2).unwrap();
        for n in 3..=1_000_000 {
            let cur = bins_mann_wald(n).unwrap();
            assert!(cur >= prev, "decrease at n={n}: {prev} -> {cur}");
            prev = cur;
        }
    }

    #[test]
    fn max_tenth_reference_values() {
        assert_eq!(bins_max_tenth(1000).unwrap(), 100);
        assert_eq!(bins_max_tenth(10).unwrap(), 1);
        assert_eq!(bins_max_tenth(95).unwrap(), 9);
        assert!(matches!(
            bins_max_tenth(9),
            Err(Error::TooFewPoints { need: 10, got: 9 })
        ));
    }

    #[test]
    fn explicit_zero_is_rejected() {
        assert!(matches!(
            BinningRule::Explicit(0).bin_count(100),
            Err(Error::TooFewBins { need: 1, got: 0 })
        ));
        assert_eq!(BinningRule::Explicit(7).bin_count(100).unwrap(), 7);
    }

    #[test]
    fn histogram_equal_split() {
        let h = build_histogram(&[1.0, 2.0, 3.0, 4.0], BinningRule::Explicit(2), None).unwrap();
        assert_eq!(h.edges, vec![1.0, 2.5, 4.0]);
        assert_eq!(h.counts, vec![2, 2]);
        assert_eq!(h.n_source, 4);
    }

    #[test]
    fn histogram_degenerate_range() {
        assert!(matches!(
            build_histogram(&[1.0, 1.0, 1.0], BinningRule::Sturges, None),
            Err(Error::DegenerateRange)
        ));
    }

    #[test]
    fn histogram_conserves_counts_and_density() {
        let values: Vec<f64> = (1..=1000).map(|i| (i as f64 * 0.7133).sin().abs() + 0.01).collect();
        let h = build_histogram(&values, BinningRule::MannWald, None).unwrap();
        assert_eq!(h.bin_count(), 60);
        assert_eq!(h.counts.iter().sum::<u64>(), 1000);
        let integral: f64 = h
            .densities
            .iter()
            .zip(h.edges.windows(2))
            .map(|(d, pair)| d * (pair[1] - pair[0]))
            .sum();
        assert!((integral - 1.0).abs() < 1e-9);
        assert_eq!(h.edges[0], *values.iter().min_by(|a, b| a.total_cmp(b)).unwrap());
        assert_eq!(h.edges[60], *values.iter().max_by(|a, b| a.total_cmp(b)).unwrap());
    }

    #[test]
    fn histogram_last_bin_closed() {
        let h = build_histogram(&[0.0, 1.0, 2.0], BinningRule::Explicit(2), None).unwrap();
        assert_eq!(h.counts, vec![1, 2]);
    }

    #[test]
    fn override_must_cover() {
        let out = build_histogram(
            &[1.0, 2.0, 5.0],
            BinningRule::Explicit(2),
            Some(&[1.0, 2.0, 3.0]),
        );
        assert!(matches!(out, Err(Error::EdgesDoNotCover { .. })));
    }

    #[test]
    fn override_must_increase() {
        let out = build_histogram(
            &[1.0, 2.0],
            BinningRule::Explicit(2),
            Some(&[0.0, 3.0, 3.0]),
        );
        assert!(matches!(out, Err(Error::EdgesNotIncreasing { index: 2 })));
    }

    #[test]
    fn override_wider_than_data_is_fine() {
        // 3.0 sits on an interior edge, so it belongs to the right-open bin
        // starting there, not to the bin below.
        let h = build_histogram(
            &[1.0, 2.0, 3.0],
            BinningRule::Explicit(4),
            Some(&[0.0, 1.5, 3.0, 4.5, 6.0]),
        )
        .unwrap();
        assert_eq!(h.counts, vec![1, 1, 1, 0]);
    }

    #[test]
    fn normalized_coordinate_spans_zero_to_n() {
        let z = normalized_coordinate(&[2.0, 4.0, 6.0]).unwrap();
        assert_eq!(z, vec![0.0, 1.5, 3.0]);
    }

    #[test]
    fn normalized_coordinate_degenerate() {
        assert!(matches!(
            normalized_coordinate(&[3.0, 3.0]),
            Err(Error::DegenerateRange)
        ));
    }
}
