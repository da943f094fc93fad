//! Shared helpers for file emission and float formatting.
//!
//! All numeric columns are printed with 17 significant digits so that a
//! round-trip through text reproduces the f64 bit pattern.

use std::io;
use std::path::Path;

/// Format a float with 17 significant digits (round-trip safe).
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // inf / nan never belong in data files; keep them greppable.
        format!("{x}")
    }
}

/// Write `contents` to `path` atomically: write a sibling temp file, then rename.
/// A failed command never leaves a partially written file behind.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("tmp-write");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

/// Compensated (Kahan) summation; the mass and mean audits need the sum of
/// thousands of cells to stay trustworthy at the 1e-12 level.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}
