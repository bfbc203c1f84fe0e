//! Number formatting and the three output formats.

use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::CliError;

pub const DEFAULT_PRECISION: usize = 6;

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// `x` at `digits` significant digits: plain notation for moderate
/// magnitudes, scientific otherwise.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    let a = r.abs();
    if r == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Rounds every non-integer number in a JSON tree.
pub fn round_json(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or_default();
            if let Some(r) = serde_json::Number::from_f64(round_sig(x, digits)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|i| round_json(i, digits)),
        Value::Object(map) => map.values_mut().for_each(|i| round_json(i, digits)),
        _ => {}
    }
}

pub fn json_text(mut v: Value, digits: usize) -> String {
    round_json(&mut v, digits);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes to `--out` if given, else stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(CliError::io("stdout"))?;
            stdout.flush().map_err(CliError::io("stdout"))
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(CliError::io(path.display().to_string()))
}

/// Reads a file, or stdin for `-`.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(CliError::io("stdin"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(CliError::io(path.display().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(2.591653196758, 6), "2.59165");
        assert_eq!(fmt_sig(43.966348520507, 6), "43.9663");
        assert_eq!(fmt_sig(4.53481073e-18, 6), "4.53481e-18");
        assert_eq!(fmt_sig(4881.05430766, 15), "4881.05430766");
        assert_eq!(fmt_sig(64.25, 6), "64.25");
        assert_eq!(fmt_sig(0.0, 6), "0");
    }

    #[test]
    fn json_integers_untouched() {
        let v = serde_json::json!({"k": 123456789, "x": [1.23456789, 2]});
        let s = json_text(v, 3);
        assert!(s.contains("123456789") && s.contains("1.23"));
        assert!(!s.contains("1.234"));
    }
}
