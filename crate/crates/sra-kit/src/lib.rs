//! Noise characterization for single-photon detectors from inter-count
//! intervals, using the sequence of ranged amplitudes (SRA) — the sample
//! sorted descending — side by side with classical histograms.
//!
//! The crate covers the full pipeline:
//!
//! - [`ranked`]: SRA construction, the rank-based empirical CDF, and mean
//!   normalization;
//! - [`binning`]: histograms under the Sturges, Mann-Wald and N/10
//!   partitioning rules;
//! - [`poisson`]: the shifted-exponential interval model, rate estimation
//!   (maximum likelihood and rank-coordinate least squares) and R^2
//!   diagnostics for both representations;
//! - [`stability`]: the subsample deviation factor and the stability curve
//!   comparing SRA against histograms over a grid of subsample lengths;
//! - [`sim`]: a seeded, bit-reproducible generator of dark-count records
//!   with detector dead time;
//! - [`record`]: text I/O for interval and timestamp records with exact
//!   unit conversion.
//!
//! The `parallel` feature (on by default) evaluates stability grids on the
//! rayon thread pool; outputs are bit-identical to the serial path.

pub mod binning;
pub mod error;
pub mod poisson;
pub mod ranked;
pub mod record;
pub mod sim;
pub mod stability;

pub use binning::{
    bins_mann_wald, bins_max_tenth, bins_sturges, build_histogram, normalized_coordinate,
    BinningRule, Histogram,
};
pub use error::{Error, Result};
pub use poisson::{
    fit_mle, fit_sra_least_squares, model_density, model_sra, r2_hist, r2_sra, r_squared,
    FitMethod, PoissonFit, PoissonModel,
};
pub use ranked::{build_sra, ecdf, normalize_to_mean, EcdfPoint, IntervalSample, RankedSequence};
pub use record::{read_record, write_record, RecordFormat, RecordKind, TimeUnit};
pub use sim::{default_paper_config, simulate_intervals, DetectorConfig};
pub use stability::{
    default_grid, deviation_factor, epsilon_hist, epsilon_hist_aligned, epsilon_sra,
    split_subsamples, stability_curve, stability_curve_aligned, stability_curve_serial,
    stability_curve_serial_aligned, EdgeAlignment, StabilityCurve, SubsampleSet,
};
