//! Reading and writing interval and timestamp records.
//!
//! The format is line-oriented UTF-8 text: one numeric value per line,
//! `#`-prefixed comment lines, blank lines ignored, LF or CRLF endings.
//! Values carry an explicit unit (s, ms, us, ns); everything is converted to
//! canonical seconds on ingestion.
//!
//! Unit conversion is performed on the decimal text, not by floating-point
//! multiplication: the factors are powers of 10^3, so converting shifts the
//! decimal exponent of the token. Together with shortest round-trip float
//! formatting on write, this makes `read(write(x, unit), unit)` reproduce `x`
//! bit-exactly for every finite positive double, in every unit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::ranked::IntervalSample;

/// Time unit of the values in a record file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TimeUnit {
    #[default]
    Seconds,
    Milliseconds,
    Microseconds,
    Nanoseconds,
}

impl TimeUnit {
    /// `10^exponent` seconds per unit.
    fn decimal_exponent(self) -> i32 {
        match self {
            TimeUnit::Seconds => 0,
            TimeUnit::Milliseconds => -3,
            TimeUnit::Microseconds => -6,
            TimeUnit::Nanoseconds => -9,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TimeUnit::Seconds => "s",
            TimeUnit::Milliseconds => "ms",
            TimeUnit::Microseconds => "us",
            TimeUnit::Nanoseconds => "ns",
        }
    }
}

/// What the lines of a record mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecordKind {
    /// Each line is an inter-count interval.
    #[default]
    Intervals,
    /// Each line is an absolute event timestamp; consecutive differences
    /// become the intervals (N timestamps yield N-1 intervals).
    Timestamps,
}

/// Kind plus unit of a record file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecordFormat {
    pub kind: RecordKind,
    pub unit: TimeUnit,
}

/// Reads a record file into canonical seconds.
pub fn read_record(path: &Path, format: RecordFormat) -> Result<IntervalSample> {
    let reader = BufReader::new(File::open(path)?);
    let shift = format.unit.decimal_exponent();
    let mut values = Vec::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        let token = line.trim();
        if token.is_empty() || token.starts_with('#') {
            continue;
        }
        let seconds = parse_shifted(token, shift).ok_or(Error::ParseError {
            path: path.to_path_buf(),
            line: line_no + 1,
        })?;
        values.push(seconds);
    }
    let values = match format.kind {
        RecordKind::Intervals => {
            for (i, &v) in values.iter().enumerate() {
                if !v.is_finite() || v <= 0.0 {
                    return Err(Error::InvalidInterval { index: i + 1 });
                }
            }
            values
        }
        RecordKind::Timestamps => to_intervals(&values)?,
    };
    IntervalSample::new(values, path.display().to_string())
}

/// Writes a sample as one value per line in `unit`, preceded by a header
/// comment. The numeric text is exact: reading the file back with the same
/// unit reproduces the sample bit for bit.
pub fn write_record(sample: &IntervalSample, path: &Path, unit: TimeUnit) -> Result<()> {
    let mut writer = BufWriter::new(File::create(path)?);
    writeln!(
        writer,
        "# intervals unit={} n={} source={}",
        unit.symbol(),
        sample.len(),
        sample.source()
    )?;
    let shift = -unit.decimal_exponent();
    for &value in sample.values() {
        writeln!(writer, "{}", shift_decimal_exponent(&format!("{value:e}"), shift))?;
    }
    writer.flush()?;
    Ok(())
}

/// Differences of strictly increasing timestamps.
fn to_intervals(timestamps: &[f64]) -> Result<Vec<f64>> {
    for (i, &t) in timestamps.iter().enumerate() {
        if !t.is_finite() {
            return Err(Error::InvalidInterval { index: i + 1 });
        }
        if i > 0 && t <= timestamps[i - 1] {
            return Err(Error::NonMonotonicTimestamps { index: i + 1 });
        }
    }
    let intervals: Vec<f64> = timestamps.windows(2).map(|w| w[1] - w[0]).collect();
    for (i, &v) in intervals.iter().enumerate() {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidInterval { index: i + 1 });
        }
    }
    Ok(intervals)
}

/// Parses `token * 10^shift` by shifting the decimal exponent textually,
/// so the conversion itself introduces no rounding.
fn parse_shifted(token: &str, shift: i32) -> Option<f64> {
    let shifted;
    let text = if shift == 0 {
        token
    } else {
        shifted = shift_decimal_exponent(token, shift);
        shifted.as_str()
    };
    let value: f64 = text.parse().ok()?;
    value.is_finite().then_some(value)
}

/// `"2.4e-5"` shifted by +6 becomes `"2.4e1"`; `"10"` shifted by -6 becomes
/// `"10e-6"`. Malformed tokens come back syntactically invalid and fail at
/// the final parse.
fn shift_decimal_exponent(token: &str, shift: i32) -> String {
    if shift == 0 {
        return token.to_string();
    }
    match token.find(['e', 'E']) {
        Some(pos) => {
            let (mantissa, exp_text) = token.split_at(pos);
            match exp_text[1..].parse::<i64>() {
                Ok(exp) => format!("{mantissa}e{}", exp + shift as i64),
                Err(_) => token.to_string(),
            }
        }
        None => format!("{token}e{shift}"),
    }
}
