//! Plain-text column dumps for plotting.
//!
//! Comma-separated, header row, LF line endings, numbers in shortest
//! round-trip form (exponent notation for very small or large magnitudes). Spectrum tables have columns `k,lambda,lambda_tilde`;
//! mode tables have `x` followed by one column per profile.

use std::fmt::Write;

use crate::error::{Error, Result};

/// Shortest round-trip rendering of a float for CSV cells. −0 prints as 0.
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.0 + 0.0;
        let a = v.abs();
        if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
            write!(f, "{v:e}")
        } else {
            write!(f, "{v}")
        }
    }
}

/// `k,lambda,lambda_tilde`, one row per retained mode.
pub fn spectrum_table(eigenvalues: &[f64], weights: &[f64]) -> Result<String> {
    if eigenvalues.len() != weights.len() {
        return Err(Error::input(format!(
            "{} eigenvalues but {} weights",
            eigenvalues.len(),
            weights.len()
        )));
    }
    let mut out = String::from("k,lambda,lambda_tilde\n");
    for (k, (l, w)) in eigenvalues.iter().zip(weights).enumerate() {
        writeln!(out, "{k},{},{}", Num(*l), Num(*w)).unwrap();
    }
    Ok(out)
}

/// `x,<name₀>,<name₁>,…` with each named column sampled on `points`.
pub fn mode_table(points: &[f64], columns: &[(String, Vec<f64>)]) -> Result<String> {
    if let Some((name, _)) = columns.iter().find(|(_, c)| c.len() != points.len()) {
        return Err(Error::input(format!("column `{name}` does not match the {} grid points", points.len())));
    }
    let mut out = String::from("x");
    for (name, _) in columns {
        if name.contains(',') || name.contains('\n') {
            return Err(Error::input(format!("column name `{name}` is not CSV-safe")));
        }
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, x) in points.iter().enumerate() {
        write!(out, "{}", Num(*x)).unwrap();
        for (_, c) in columns {
            write!(out, ",{}", Num(c[i])).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}
