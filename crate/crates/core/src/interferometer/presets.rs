//! Named configurations matching the two experimental setups.

use super::config::{Arm, Gap, InterferometerConfig, Rolloff};
use super::conversions::{phase_matching_kernel_width, pump_kernel_width, spatial_mismatch_coefficient};
use crate::error::{Error, Result};
use crate::materials;
use crate::schmidt::SchmidtMethod;

pub const PRESET_NAMES: [&str; 3] = ["paper-angular", "paper-spectral", "separable"];

/// Gain of the spectral preset, chosen so that the synthesized spectrum
/// with no dispersion has the measured 45.6 nm FWHM.
pub const SPECTRAL_PRESET_GAIN: f64 = 20.8;

/// Gain of the angular preset.
pub const ANGULAR_PRESET_GAIN: f64 = 10.0;

/// Two 3 mm BBO crystals in a 200 µm FWHM pump, degenerate PDC at 709.3 nm,
/// 60 mm free-space gap.
pub fn paper_angular() -> InterferometerConfig {
    InterferometerConfig {
        arm: Arm::Spatial,
        pump_fwhm_um: Some(200.0),
        pump_coherence_time_fs: None,
        pump_wavelength_um: None,
        pdc_wavelength_um: 0.7093,
        crystal_material: "BBO".into(),
        crystal_length_mm: 3.0,
        gap: Gap::FreeSpace { length_mm: 60.0 },
        gain: ANGULAR_PRESET_GAIN,
        baseline_fwhm_nm: None,
        rolloff: Rolloff::GainScaled,
        schmidt_method: SchmidtMethod::Auto,
    }
}

/// 3 mm BBO pumped at 354.7 nm with a 6 ps coherence time and a 225 µm
/// half-power beam width; the air-gap spectrum is 45.6 nm wide.
pub fn paper_spectral() -> InterferometerConfig {
    InterferometerConfig {
        arm: Arm::Temporal,
        pump_fwhm_um: Some(225.0),
        pump_coherence_time_fs: Some(6000.0),
        pump_wavelength_um: Some(0.3547),
        pdc_wavelength_um: 0.7094,
        crystal_material: "BBO".into(),
        crystal_length_mm: 3.0,
        gap: Gap::Dispersive { material: "air".into(), length_mm: 0.0 },
        gain: SPECTRAL_PRESET_GAIN,
        baseline_fwhm_nm: Some(45.6),
        rolloff: Rolloff::GainScaled,
        schmidt_method: SchmidtMethod::Auto,
    }
}

/// The angular setup with the pump focused until σ_p = σ_pm, which makes
/// the two-photon amplitude a product state.
pub fn separable() -> InterferometerConfig {
    let mut c = paper_angular();
    let crystal = materials::material(&c.crystal_material).expect("BBO is built in");
    let n = crystal.refractive_index(c.pdc_wavelength_um).expect("709.3 nm is in range");
    let k = 2.0 * std::f64::consts::PI * n / c.pdc_wavelength_um;
    let sigma_pm = phase_matching_kernel_width(spatial_mismatch_coefficient(k, c.crystal_length_mm * 1e3));
    // pump_kernel_width(fwhm) = √(2 ln 2)/fwhm is its own inverse.
    c.pump_fwhm_um = Some(pump_kernel_width(sigma_pm));
    c.gap = Gap::FreeSpace { length_mm: 0.0 };
    c
}

pub fn preset(name: &str) -> Result<InterferometerConfig> {
    match name {
        "paper-angular" => Ok(paper_angular()),
        "paper-spectral" => Ok(paper_spectral()),
        "separable" => Ok(separable()),
        other => Err(Error::config(format!(
            "unknown preset `{other}`; available: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}
