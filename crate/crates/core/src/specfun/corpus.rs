//! Reader and writer for reference tables of `H_ν(z)`.
//!
//! One record per line, six whitespace-separated decimals:
//! `nu_re nu_im z_re z_im H_re H_im`. Blank lines and lines starting with
//! `#` are skipped.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt::Write as _;

/// A reference value `H_ν(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRecord {
    pub nu: Complex64,
    pub z: Complex64,
    pub value: Complex64,
}

/// Parses a corpus. Errors name the offending line (1-based).
pub fn parse_corpus(text: &str) -> Result<Vec<OracleRecord>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Invalid(format!("corpus line {}: {e}", idx + 1)))?;
        if fields.len() != 6 {
            return Err(Error::Invalid(format!(
                "corpus line {}: expected 6 fields, found {}",
                idx + 1,
                fields.len()
            )));
        }
        out.push(OracleRecord {
            nu: Complex64::new(fields[0], fields[1]),
            z: Complex64::new(fields[2], fields[3]),
            value: Complex64::new(fields[4], fields[5]),
        });
    }
    Ok(out)
}

/// Formats records with 17 significant digits, enough to round-trip binary64.
pub fn write_corpus(records: &[OracleRecord]) -> String {
    let mut s = String::new();
    for r in records {
        let _ = writeln!(
            s,
            "{:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
            r.nu.re, r.nu.im, r.z.re, r.z.im, r.value.re, r.value.im
        );
    }
    s
}
