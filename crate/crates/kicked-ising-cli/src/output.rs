//! Deterministic output helpers: every floating-point value is printed with
//! 17 significant digits so identical configurations produce bit-identical
//! CSV/JSON files.

use serde_json::value::RawValue;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// 17 significant digits, scientific notation; round-trips exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number carrying the canonical 17-digit rendering.
pub fn jnum(x: f64) -> Box<RawValue> {
    RawValue::from_string(fmt_f64(x)).expect("17-digit float is valid JSON")
}

pub fn jnum_vec(xs: impl IntoIterator<Item = f64>) -> Vec<Box<RawValue>> {
    xs.into_iter().map(jnum).collect()
}

/// Write to a file, or to stdout when no path is given.
pub fn write_text(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, content),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(content.as_bytes())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rendering_round_trips() {
        for x in [0.0, 0.5, std::f64::consts::PI / 4.0, 1e-300, -17.25, 1.0 / 3.0] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn rendered_floats_are_valid_json() {
        let v: f64 = serde_json::from_str(jnum(-0.125).get()).unwrap();
        assert_eq!(v, -0.125);
    }
}
