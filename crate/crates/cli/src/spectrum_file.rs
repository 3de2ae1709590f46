//! Plain-text spectrum files: one `energy degeneracy` pair per line,
//! whitespace separated, `#` starts a comment, blank lines ignored.

use anyhow::{bail, Context, Result};
use qgas_core::thermo_discrete::Spectrum;
use std::path::Path;

pub fn parse_spectrum(text: &str) -> Result<Spectrum> {
    let mut levels = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let energy: f64 = parts
            .next()
            .unwrap()
            .parse()
            .with_context(|| format!("line {}: bad energy", lineno + 1))?;
        let Some(deg_text) = parts.next() else {
            bail!("line {}: expected `energy degeneracy`", lineno + 1);
        };
        let degeneracy: i64 = deg_text
            .parse()
            .with_context(|| format!("line {}: bad degeneracy", lineno + 1))?;
        if parts.next().is_some() {
            bail!("line {}: trailing fields", lineno + 1);
        }
        if !energy.is_finite() {
            bail!("line {}: energy must be finite", lineno + 1);
        }
        if degeneracy <= 0 {
            bail!("line {}: degeneracy must be a positive integer", lineno + 1);
        }
        levels.push((energy, degeneracy as u32));
    }
    if levels.is_empty() {
        bail!("spectrum file holds no levels");
    }
    Spectrum::new(levels).map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn load_spectrum(path: &Path) -> Result<Spectrum> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading spectrum file {}", path.display()))?;
    parse_spectrum(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Canonical serialization (sorted levels, one pair per line); pins the
/// parse-then-serialize round-trip contract of the format.
#[cfg(test)]
pub fn write_spectrum(spec: &Spectrum) -> String {
    use std::fmt::Write as _;
    let mut out = String::from("# energy degeneracy\n");
    for &(e, g) in spec.levels() {
        writeln!(out, "{e} {g}").expect("string write");
    }
    out
}
