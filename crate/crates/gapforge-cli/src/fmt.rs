//! Deterministic numeric formatting for diffable artifacts: every float is
//! printed at 12 significant digits (trailing zeros trimmed), JSON objects
//! carry sorted keys, CSV uses `\n` line endings.

use serde::Serialize;
use serde_json::Value;

pub const SIG_DIGITS: usize = 12;

/// Format at `SIG_DIGITS` significant digits, plain decimal where readable,
/// scientific notation for extreme magnitudes.  Values below the dense
/// eigensolver noise floor print as 0.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || x.abs() < 1e-12 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-4..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        // trim mantissa zeros: 1.23000000000e-7 -> 1.23e-7
        match s.split_once('e') {
            Some((mantissa, e)) => format!("{}e{}", trim_zeros(mantissa), e),
            None => s,
        }
    };
    trim_zeros(&s)
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Round a float to `SIG_DIGITS` significant digits by a string round-trip,
/// so serialised JSON numbers honour the same budget.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                let x = round_sig(n.as_f64().unwrap());
                serde_json::Number::from_f64(x)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            } else {
                Value::Number(n)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

/// Serialise with sorted keys (serde_json's map is a BTreeMap) and floats
/// rounded to the significant-digit budget; ends with a newline.
pub fn json_string<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&round_value(v))?;
    s.push('\n');
    Ok(s)
}

/// Build a CSV payload: header row then records, `\n` endings throughout.
pub fn csv_string(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}
