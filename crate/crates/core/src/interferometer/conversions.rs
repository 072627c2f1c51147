//! The one place where FWHM figures, Gaussian widths and spectral units meet.

use std::f64::consts::{LN_2, PI};

use crate::units::SPEED_OF_LIGHT_NM_PER_FS;

/// sinc²(u) = 1/2 at this u.
pub const SINC_SQUARED_HALF_MAX: f64 = 1.391_557;

/// FWHM of a Gaussian intensity exp(−x²/2σ²) in units of σ, 2√(2 ln 2).
pub fn fwhm_per_sigma() -> f64 {
    2.0 * (2.0 * LN_2).sqrt()
}

/// 1/e amplitude radius w of a beam whose intensity FWHM is `fwhm`.
/// Intensity ∝ exp(−2x²/w²).
pub fn waist_from_fwhm(fwhm: f64) -> f64 {
    fwhm / (2.0 * LN_2).sqrt()
}

pub fn fwhm_from_waist(waist: f64) -> f64 {
    waist * (2.0 * LN_2).sqrt()
}

/// Full width of the pump amplitude gate, √2 times the intensity FWHM.
///
/// Parametric gain follows the pump field, not its intensity, so the extent
/// of the pump that can amplify a mode is the FWHM of |E_p|.
pub fn amplitude_gate(intensity_fwhm: f64) -> f64 {
    std::f64::consts::SQRT_2 * intensity_fwhm
}

/// Kernel width σ_p of a pump with intensity FWHM `fwhm` in the conjugate
/// variable: a transform-limited Gaussian of that FWHM has an intensity
/// spectrum exp(−Ω²/2σ_p²) with σ_p = √(2 ln 2)/FWHM.
pub fn pump_kernel_width(fwhm: f64) -> f64 {
    (2.0 * LN_2).sqrt() / fwhm
}

/// Gaussian σ_pm matching the FWHM of sinc²(κ·Δ²) in Δ = x_s − x_i, where
/// the phase mismatch ΔkL/2 = κΔ².
pub fn phase_matching_kernel_width(kappa: f64) -> f64 {
    let fwhm = 2.0 * (SINC_SQUARED_HALF_MAX / kappa).sqrt();
    fwhm / fwhm_per_sigma()
}

/// κ for temporal phase matching in a crystal of length `length_mm` with
/// group-velocity dispersion `gvd` in fs²/mm: ΔkL/2 = k″L(ω_s−ω_i)²/8.
pub fn temporal_mismatch_coefficient(gvd: f64, length_mm: f64) -> f64 {
    gvd * length_mm / 8.0
}

/// κ for transverse phase matching: ΔkL/2 = L(q_s−q_i)²/(8k), with
/// k = 2πn/λ the signal wavenumber in the crystal. Lengths in µm.
pub fn spatial_mismatch_coefficient(wavenumber: f64, length_um: f64) -> f64 {
    length_um / (8.0 * wavenumber)
}

/// ω = 2πc/λ in rad/fs for λ in µm.
pub fn angular_frequency(wavelength_um: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT_NM_PER_FS / (wavelength_um * 1e3)
}

/// Δλ (nm) = λ²Δω/(2πc) at centre wavelength λ (µm).
pub fn delta_lambda_nm(delta_omega: f64, wavelength_um: f64) -> f64 {
    let lambda_nm = wavelength_um * 1e3;
    lambda_nm * lambda_nm * delta_omega / (2.0 * PI * SPEED_OF_LIGHT_NM_PER_FS)
}

/// Inverse of [`delta_lambda_nm`].
pub fn delta_omega(delta_lambda_nm: f64, wavelength_um: f64) -> f64 {
    let lambda_nm = wavelength_um * 1e3;
    2.0 * PI * SPEED_OF_LIGHT_NM_PER_FS * delta_lambda_nm / (lambda_nm * lambda_nm)
}

/// Full width at half maximum of a sampled, single-peaked curve, with linear
/// interpolation of the crossings. `None` if the curve does not fall below
/// half its peak on both sides.
pub fn sampled_fwhm(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return None;
    }
    let (peak_i, peak) =
        ys.iter().cloned().enumerate().max_by(|a, b| a.1.total_cmp(&b.1))?;
    if !(peak > 0.0) {
        return None;
    }
    let half = 0.5 * peak;
    let crossing = |i: usize, j: usize| xs[i] + (half - ys[i]) * (xs[j] - xs[i]) / (ys[j] - ys[i]);
    let left = (1..=peak_i).rev().find(|&i| ys[i - 1] < half).map(|i| crossing(i - 1, i))?;
    let right = (peak_i..ys.len() - 1).find(|&i| ys[i + 1] < half).map(|i| crossing(i, i + 1))?;
    Some(right - left)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn waist_and_fwhm_round_trip() {
        assert!((fwhm_from_waist(waist_from_fwhm(200.0)) - 200.0).abs() < 1e-12);
        // Intensity exp(−2x²/w²) is at half maximum at x = FWHM/2.
        let w = waist_from_fwhm(200.0);
        assert!(((-2.0 * 100.0 * 100.0 / (w * w)).exp() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sinc_constant_is_the_half_maximum() {
        let u = SINC_SQUARED_HALF_MAX;
        assert!(((u.sin() / u).powi(2) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn matched_gaussian_has_the_sinc_fwhm() {
        let kappa = 3.7;
        let sigma = phase_matching_kernel_width(kappa);
        let half_width = (SINC_SQUARED_HALF_MAX / kappa).sqrt();
        // Gaussian intensity exp(−Δ²/2σ²) at Δ = half FWHM.
        let g = (-half_width * half_width / (2.0 * sigma * sigma)).exp();
        assert!((g - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pump_width_from_fwhm() {
        let t = 6000.0;
        let sigma = pump_kernel_width(t);
        // Field exp(−2 ln2 t²/T²) has spectral intensity exp(−Ω²T²/(4 ln 2)).
        let omega = 1.7 * sigma;
        let direct = (-omega * omega * t * t / (4.0 * LN_2)).exp();
        assert!((direct - (-omega * omega / (2.0 * sigma * sigma)).exp()).abs() < 1e-12);
    }

    #[test]
    fn sampled_fwhm_of_gaussian() {
        let xs: Vec<f64> = (0..2001).map(|i| -10.0 + 0.01 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (-x * x / 2.0).exp()).collect();
        let w = sampled_fwhm(&xs, &ys).unwrap();
        assert!((w - fwhm_per_sigma()).abs() < 1e-4);
        assert!(sampled_fwhm(&xs[..1000], &ys[..1000]).is_none());
    }
}
