//! Report envelope and output formatting.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 15;

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub tool_version: String,
}

impl Envelope {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, Value>,
        results: impl Serialize,
    ) -> anyhow::Result<Self> {
        let mut results = serde_json::to_value(results)?;
        round_floats(&mut results);
        Ok(Self {
            command: command.to_owned(),
            parameters,
            results,
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        })
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Rounds every non-integer number in the tree to 15 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            *v = serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Float text for CSV cells, with the same rounding as JSON.
pub fn fmt_float(x: f64) -> String {
    let r = round_sig(x);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{r:.1}")
    } else {
        format!("{r}")
    }
}
