use serde::{Deserialize, Serialize};

use super::ModalSpectrum;
use crate::error::{Error, Result};

const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Per-mode populations of an amplified Schmidt spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainedSpectrum {
    pub gain: f64,
    /// λ̃_k, summing to one.
    pub weights: Vec<f64>,
    /// ⟨N_k⟩ = sinh²(√λ_k·G).
    pub photon_numbers: Vec<f64>,
}

impl GainedSpectrum {
    pub fn total_photon_number(&self) -> f64 {
        self.photon_numbers.iter().sum()
    }

    pub fn effective_mode_number(&self) -> f64 {
        1.0 / self.weights.iter().map(|w| w * w).sum::<f64>()
    }
}

fn check_gain(gain: f64) -> Result<()> {
    if !(gain >= 0.0 && gain.is_finite()) {
        return Err(Error::input(format!("gain must be a finite non-negative number, got {gain}")));
    }
    Ok(())
}

/// ln sinh(x) for x > 0, without overflow at large x or underflow at small x.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    if x < 1e-8 {
        x.ln()
    } else if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// ⟨N_k⟩ = sinh²(√λ_k·G) for each eigenvalue, plus the renormalised weights.
pub fn mean_photon_numbers(spectrum: &dyn ModalSpectrum, gain: f64) -> Result<GainedSpectrum> {
    gained_spectrum(spectrum.eigenvalues(), gain)
}

/// [`mean_photon_numbers`] from a bare eigenvalue list.
pub fn gained_spectrum(eigenvalues: &[f64], gain: f64) -> Result<GainedSpectrum> {
    check_gain(gain)?;
    let weights = renormalize_weights(eigenvalues, gain)?;
    let photon_numbers = eigenvalues.iter().map(|l| (l.sqrt() * gain).sinh().powi(2)).collect();
    Ok(GainedSpectrum { gain, weights, photon_numbers })
}

/// λ̃_k = sinh²(√λ_k·G) / Σ_j sinh²(√λ_j·G).
///
/// Evaluated in the log domain so that very high gain does not overflow.
/// At G = 0 the ratio is indeterminate and its limit, λ_k itself, is returned.
pub fn renormalize_weights(eigenvalues: &[f64], gain: f64) -> Result<Vec<f64>> {
    if eigenvalues.is_empty() {
        return Err(Error::input("eigenvalue list is empty"));
    }
    check_gain(gain)?;
    if eigenvalues.iter().any(|l| !(*l >= 0.0 && l.is_finite())) {
        return Err(Error::input("eigenvalues must be finite and non-negative"));
    }
    let total: f64 = eigenvalues.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::input(format!("eigenvalues sum to {total}, expected 1")));
    }
    if gain == 0.0 {
        return Ok(eigenvalues.to_vec());
    }
    let logs: Vec<f64> = eigenvalues
        .iter()
        .map(|&l| if l > 0.0 { 2.0 * ln_sinh(l.sqrt() * gain) } else { f64::NEG_INFINITY })
        .collect();
    let peak = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = logs.iter().map(|v| (v - peak).exp()).collect();
    let norm: f64 = scaled.iter().sum();
    Ok(scaled.into_iter().map(|v| v / norm).collect())
}

/// K = 1/Σ w_k², the inverse participation ratio.
pub fn effective_mode_number(weights: &[f64]) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::input("weight list is empty"));
    }
    if weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
        return Err(Error::input("weights must be finite and non-negative"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::input(format!("weights sum to {total}, expected 1")));
    }
    Ok(1.0 / weights.iter().map(|w| w * w).sum::<f64>())
}
