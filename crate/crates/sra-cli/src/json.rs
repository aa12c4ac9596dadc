//! JSON number formatting.
//!
//! Every float in an emitted report is serialized with 17 significant digits
//! (`{:.16e}`), which pins the exact f64 bit pattern for any consumer. The
//! `arbitrary_precision` feature of serde_json preserves the formatted text.

use serde_json::{Number, Value};

/// A finite f64 as a 17-significant-digit JSON number.
pub fn num(value: f64) -> Value {
    assert!(value.is_finite(), "cannot serialize non-finite value");
    let text = format!("{value:.16e}");
    Value::Number(text.parse::<Number>().expect("well-formed float literal"))
}

/// As [`num`], with `null` for non-finite values (unbounded ratios).
pub fn num_or_null(value: f64) -> Value {
    if value.is_finite() {
        num(value)
    } else {
        Value::Null
    }
}

/// An optional float, `null` when absent.
pub fn opt_num(value: Option<f64>) -> Value {
    value.map_or(Value::Null, num)
}

/// The same 17-significant-digit text used for CSV cells.
pub fn csv(value: f64) -> String {
    format!("{value:.16e}")
}
