//! Observable predictions of the two-crystal interferometer.
//!
//! An [`Interferometer`] owns a configuration, the double-Gaussian kernel it
//! implies and that kernel's Schmidt spectrum. From those it predicts the
//! angular width behind a free-space gap, the spectral width behind a
//! dispersive gap, and a mode-by-mode synthesis of the output spectrum.

pub mod config;
pub mod conversions;
mod curve;
pub mod presets;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use config::{Arm, ConfigFile, Gap, InterferometerConfig, Rolloff};
pub use curve::WidthCurve;

use crate::error::{Error, Result};
use crate::propagation::{rescale_mode_profile, SpatialPropagation, TemporalPropagation};
use crate::schmidt::gain::ln_sinh;
use crate::schmidt::{
    decompose_double_gaussian, renormalize_weights, DoubleGaussian, ModalSpectrum, ModeFamily, ModeKind,
    Spectrum,
};
use conversions::{
    amplitude_gate, angular_frequency, delta_lambda_nm, delta_omega, fwhm_from_waist, fwhm_per_sigma,
    phase_matching_kernel_width,
    pump_kernel_width, sampled_fwhm, spatial_mismatch_coefficient, temporal_mismatch_coefficient,
};

/// Δω and the equivalent wavelength FWHM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralWidth {
    /// rad/fs
    pub delta_omega: f64,
    pub fwhm_nm: f64,
}

/// S(x) = Σ_k g_k·λ̃_k·|u_k(x)|² on the spectrum's grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesizedSpectrum {
    pub arm: Arm,
    /// Kernel variable: transverse wavevector (rad/µm) or detuning (rad/fs).
    pub abscissa: Vec<f64>,
    /// Emission angle (rad) or wavelength (nm) of each sample.
    pub observable: Vec<f64>,
    pub intensity: Vec<f64>,
    /// g_k per mode.
    pub factors: Vec<f64>,
    /// Σ_k g_k·λ̃_k, the fraction of first-crystal light that is re-amplified.
    pub total_weight: f64,
    pub center_wavelength_um: f64,
}

impl SynthesizedSpectrum {
    /// FWHM in the kernel variable.
    pub fn fwhm_native(&self) -> Option<f64> {
        sampled_fwhm(&self.abscissa, &self.intensity)
    }

    /// FWHM in rad (spatial) or nm (temporal), converted linearly about the centre.
    pub fn fwhm(&self) -> Option<f64> {
        let w = self.fwhm_native()?;
        Some(match self.arm {
            Arm::Spatial => w * self.center_wavelength_um / (2.0 * PI),
            Arm::Temporal => delta_lambda_nm(w, self.center_wavelength_um),
        })
    }
}

/// Size of one mode against the pump, before and after the gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeOverlap {
    pub order: usize,
    /// µm or fs.
    pub size_before: f64,
    pub size_after: f64,
    /// Half of the pump amplitude gate, in the same unit.
    pub pump_half_size: f64,
}

impl ModeOverlap {
    pub fn inside_before(&self) -> bool {
        self.size_before <= self.pump_half_size
    }

    pub fn inside_after(&self) -> bool {
        self.size_after <= self.pump_half_size
    }

    pub fn ratio_after(&self) -> f64 {
        self.size_after / self.pump_half_size
    }
}

/// Sampled mode profiles around the gap, on a common grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeProfiles {
    /// Position in µm or time in fs.
    pub points: Vec<f64>,
    /// Pump field amplitude, peak 1.
    pub pump: Vec<f64>,
    pub orders: Vec<usize>,
    pub before: Vec<Vec<f64>>,
    pub after: Vec<Vec<f64>>,
    pub overlaps: Vec<ModeOverlap>,
}

/// A configured interferometer with its Schmidt spectrum.
#[derive(Debug, Clone)]
pub struct Interferometer {
    config: InterferometerConfig,
    model: DoubleGaussian,
    spectrum: Spectrum,
    weights: Vec<f64>,
}

/// σ_p and σ_pm of the double-Gaussian kernel a configuration implies.
pub fn kernel_model(config: &InterferometerConfig) -> Result<DoubleGaussian> {
    config.validate()?;
    let crystal = config.crystal()?;
    let lambda = config.pdc_wavelength_um;
    match config.arm {
        Arm::Spatial => {
            let fwhm = config.pump_fwhm_um.ok_or_else(|| Error::config("the spatial arm needs pump_fwhm"))?;
            let k = 2.0 * PI * crystal.refractive_index(lambda)? / lambda;
            let kappa = spatial_mismatch_coefficient(k, config.crystal_length_mm * 1e3);
            DoubleGaussian::new(pump_kernel_width(fwhm), phase_matching_kernel_width(kappa))
        }
        Arm::Temporal => {
            let tc = config
                .pump_coherence_time_fs
                .ok_or_else(|| Error::config("the temporal arm needs pump_coherence_time"))?;
            let gvd = crystal.gvd(lambda)?;
            if !(gvd > 0.0) {
                return Err(Error::config(format!(
                    "crystal {} has no positive GVD at {lambda} µm; temporal phase matching is undefined",
                    crystal.name
                )));
            }
            let kappa = temporal_mismatch_coefficient(gvd, config.crystal_length_mm);
            DoubleGaussian::new(pump_kernel_width(tc), phase_matching_kernel_width(kappa))
        }
    }
}

impl Interferometer {
    pub fn new(config: InterferometerConfig) -> Result<Self> {
        let model = kernel_model(&config)?;
        let spectrum = decompose_double_gaussian(&model, config.schmidt_method)?;
        let weights = renormalize_weights(spectrum.eigenvalues(), config.gain)?;
        Ok(Interferometer { config, model, spectrum, weights })
    }

    pub fn config(&self) -> &InterferometerConfig {
        &self.config
    }

    pub fn kernel_model(&self) -> &DoubleGaussian {
        &self.model
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// λ̃_k at the configured gain.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn require(&self, arm: Arm) -> Result<()> {
        if self.config.arm != arm {
            let name = match arm {
                Arm::Spatial => "spatial",
                Arm::Temporal => "temporal",
            };
            return Err(Error::config(format!("this operation needs a {name} configuration")));
        }
        Ok(())
    }

    /// Fundamental mode size in the conjugate domain: w₀ in µm (1/e
    /// amplitude radius) or τ₀ in fs.
    pub fn fundamental_size(&self) -> f64 {
        let s = self.spectrum.fundamental_scale();
        match self.config.arm {
            Arm::Spatial => std::f64::consts::SQRT_2 / s,
            Arm::Temporal => 1.0 / s,
        }
    }

    /// Full width of the pump amplitude, a (µm) or T_p (fs).
    pub fn pump_gate(&self) -> f64 {
        let fwhm = match self.config.arm {
            Arm::Spatial => self.config.pump_fwhm_um,
            Arm::Temporal => self.config.pump_coherence_time_fs,
        };
        amplitude_gate(fwhm.expect("validated on construction"))
    }

    pub fn mode_family(&self, max_order: usize) -> Result<ModeFamily> {
        match self.config.arm {
            Arm::Spatial => {
                ModeFamily::new(ModeKind::Spatial, self.fundamental_size(), self.config.pdc_wavelength_um, max_order)
            }
            Arm::Temporal => ModeFamily::new(
                ModeKind::Temporal,
                self.fundamental_size(),
                angular_frequency(self.config.pdc_wavelength_um),
                max_order,
            ),
        }
    }

    pub fn spatial_propagation(&self, distance_mm: f64) -> Result<SpatialPropagation> {
        self.require(Arm::Spatial)?;
        SpatialPropagation::new(self.fundamental_size(), self.config.pdc_wavelength_um, distance_mm)
    }

    pub fn temporal_propagation(&self, k2d: f64) -> Result<TemporalPropagation> {
        self.require(Arm::Temporal)?;
        TemporalPropagation::new(self.fundamental_size(), k2d)
    }

    /// M = (a/2)/w₀(L): how many times the spread fundamental fits in the pump.
    pub fn amplified_mode_scale(&self, distance_mm: f64) -> Result<f64> {
        let prop = self.spatial_propagation(distance_mm)?;
        Ok(0.5 * self.pump_gate() / prop.waist(0))
    }

    /// Highest order m with √(2m+1) ≤ M, or `None` when even the fundamental
    /// outgrows the pump.
    pub fn max_amplified_order(&self, distance_mm: f64) -> Result<Option<usize>> {
        let m = self.amplified_mode_scale(distance_mm)?;
        Ok((m >= 1.0).then(|| ((m * m - 1.0) / 2.0 + 1e-12).floor() as usize))
    }

    /// Δθ₀ = aλ/(πw₀²) in rad.
    pub fn initial_angular_width(&self) -> Result<f64> {
        self.require(Arm::Spatial)?;
        let w0 = self.fundamental_size();
        Ok(self.pump_gate() * self.config.pdc_wavelength_um / (PI * w0 * w0))
    }

    /// Δθ = [1/Δθ₀² + (L/a)²]^(−1/2) in rad.
    pub fn angular_width(&self, distance_mm: f64) -> Result<f64> {
        check_abscissa(distance_mm)?;
        let d0 = self.initial_angular_width()?;
        let lever = distance_mm * 1e3 / self.pump_gate();
        Ok((d0.powi(-2) + lever * lever).powf(-0.5))
    }

    /// [`angular_width`](Self::angular_width) floored at the far-field
    /// intensity FWHM of the fundamental mode, θ₀·√(2 ln 2): once a single
    /// mode is left the width stops shrinking.
    pub fn saturated_angular_width(&self, distance_mm: f64) -> Result<f64> {
        let prop = self.spatial_propagation(distance_mm)?;
        Ok(self.angular_width(distance_mm)?.max(fwhm_from_waist(prop.divergence())))
    }

    /// Δω₀ in rad/fs: the measured baseline if configured, otherwise the FWHM
    /// of the kernel's marginal spectrum.
    pub fn initial_spectral_width(&self) -> Result<f64> {
        self.require(Arm::Temporal)?;
        Ok(match self.config.baseline_fwhm_nm {
            Some(nm) => delta_omega(nm, self.config.pdc_wavelength_um),
            None => fwhm_per_sigma() * self.model.marginal_rms_width(),
        })
    }

    /// Δω = [1/Δω₀² + (k″d/T_p)²]^(−1/2) with T_p the pump amplitude gate.
    pub fn spectral_width(&self, k2d: f64) -> Result<SpectralWidth> {
        check_abscissa(k2d)?;
        let d0 = self.initial_spectral_width()?;
        let lever = k2d / self.pump_gate();
        let delta_omega = (d0.powi(-2) + lever * lever).powf(-0.5);
        Ok(SpectralWidth { delta_omega, fwhm_nm: delta_lambda_nm(delta_omega, self.config.pdc_wavelength_um) })
    }

    /// k″d of a dispersive gap at the PDC wavelength.
    pub fn gap_k2d(&self, gap: &Gap) -> Result<f64> {
        match gap {
            Gap::Dispersive { .. } => gap.k2d(self.config.pdc_wavelength_um),
            Gap::FreeSpace { .. } => Err(Error::config("a free-space gap has no k″d; use a dispersive gap")),
        }
    }

    /// Mode sizes after `gap`, indexed by order, with the pump half-size.
    fn sizes_after(&self, gap: &Gap, count: usize) -> Result<(Vec<f64>, f64)> {
        let half = 0.5 * self.pump_gate();
        let sizes = match (self.config.arm, gap) {
            (Arm::Spatial, Gap::FreeSpace { length_mm }) => {
                let p = self.spatial_propagation(*length_mm)?;
                (0..count).map(|k| p.waist(k)).collect()
            }
            (Arm::Temporal, Gap::Dispersive { .. }) => {
                let p = self.temporal_propagation(self.gap_k2d(gap)?)?;
                (0..count).map(|k| p.duration(k)).collect()
            }
            (Arm::Spatial, _) => return Err(Error::config("the spatial arm needs a free-space gap")),
            (Arm::Temporal, _) => return Err(Error::config("the temporal arm needs a dispersive gap")),
        };
        Ok((sizes, half))
    }

    /// g_k ∈ [0, 1] for every Schmidt mode behind `gap`.
    pub fn amplification_factors(&self, gap: &Gap) -> Result<Vec<f64>> {
        let eigenvalues = self.spectrum.eigenvalues();
        let (sizes, half) = self.sizes_after(gap, eigenvalues.len())?;
        let gain = self.config.gain;
        // Overlap loss shared by every mode once the fundamental is wider than the pump.
        let common = sizes.first().map_or(1.0, |&s0| (half / s0).min(1.0));
        Ok(sizes
            .iter()
            .zip(eigenvalues)
            .map(|(&size, &lambda)| {
                let f = (half / size).min(1.0);
                match self.config.rolloff {
                    Rolloff::None => 1.0,
                    Rolloff::Hard => (f >= 1.0) as u8 as f64,
                    Rolloff::Quadratic => f * f,
                    Rolloff::GainScaled => {
                        let relative = (f / common).min(1.0);
                        common * common * gain_scaled_factor(relative, lambda.sqrt() * gain)
                    }
                }
            })
            .collect())
    }

    pub fn synthesize_output_spectrum(&self, gap: &Gap) -> Result<SynthesizedSpectrum> {
        let factors = self.amplification_factors(gap)?;
        synthesize_output_spectrum(
            &self.spectrum,
            &self.weights,
            &factors,
            self.config.arm,
            self.config.pdc_wavelength_um,
        )
    }

    /// Pointwise [`angular_width`](Self::angular_width) (L in mm) or
    /// [`spectral_width`](Self::spectral_width) (k″d in fs²), sorted by abscissa.
    pub fn sweep_width(&self, abscissa: &[f64]) -> Result<WidthCurve> {
        if abscissa.is_empty() {
            return Err(Error::input("sweep needs at least one abscissa value"));
        }
        let mut xs = abscissa.to_vec();
        for &x in &xs {
            check_abscissa(x)?;
        }
        xs.sort_by(f64::total_cmp);
        let (widths, ua, uw): (Vec<f64>, _, _) = match self.config.arm {
            Arm::Spatial => {
                (xs.iter().map(|&l| self.angular_width(l)).collect::<Result<_>>()?, "mm", "rad")
            }
            Arm::Temporal => (
                xs.iter().map(|&k| self.spectral_width(k).map(|w| w.fwhm_nm)).collect::<Result<_>>()?,
                "fs^2",
                "nm",
            ),
        };
        Ok(WidthCurve::new(xs, widths, ua, uw, self.metadata()))
    }

    /// Config snapshot plus the derived kernel and mode parameters.
    pub fn metadata(&self) -> serde_json::Value {
        serde_json::json!({
            "config": self.config.to_file(),
            "derived": {
                "pump_kernel_width": self.model.pump_width,
                "phase_matching_kernel_width": self.model.pm_width,
                "schmidt_number_low_gain": self.model.schmidt_number(),
                "schmidt_method": self.spectrum.method(),
                "fundamental_size": self.fundamental_size(),
                "fundamental_size_unit": match self.config.arm { Arm::Spatial => "um", Arm::Temporal => "fs" },
                "pump_gate": self.pump_gate(),
            }
        })
    }

    pub fn mode_overlaps(&self, orders: &[usize], gap: &Gap) -> Result<Vec<ModeOverlap>> {
        let count = orders.iter().max().map_or(0, |m| m + 1);
        let (after, half) = self.sizes_after(gap, count)?;
        let family = self.mode_family(count.max(1))?;
        Ok(orders
            .iter()
            .map(|&m| ModeOverlap {
                order: m,
                size_before: family.mode_size(m),
                size_after: after[m],
                pump_half_size: half,
            })
            .collect())
    }

    /// Profiles of `orders` before and after `gap` on `len` points, with the
    /// pump envelope. The grid covers the widest stretched mode and the pump.
    pub fn mode_profiles(&self, orders: &[usize], gap: &Gap, len: usize) -> Result<ModeProfiles> {
        if orders.is_empty() {
            return Err(Error::input("no mode orders requested"));
        }
        if len < 3 {
            return Err(Error::input("profiles need at least three points"));
        }
        let overlaps = self.mode_overlaps(orders, gap)?;
        let family = self.mode_family(orders.iter().copied().max().unwrap_or(0))?;
        let widest = overlaps.iter().map(|o| o.size_after).fold(0.0, f64::max);
        let gate = self.pump_gate();
        let half_span = (2.5 * widest).max(1.5 * gate);
        let step = 2.0 * half_span / (len - 1) as f64;
        let points: Vec<f64> = (0..len).map(|i| -half_span + i as f64 * step).collect();
        // Intensity FWHM F gives amplitude exp(−2 ln2 x²/F²).
        let fwhm = gate / std::f64::consts::SQRT_2;
        let pump = points
            .iter()
            .map(|x| (-2.0 * std::f64::consts::LN_2 * x * x / (fwhm * fwhm)).exp())
            .collect();
        let mut before = Vec::with_capacity(orders.len());
        let mut after = Vec::with_capacity(orders.len());
        for o in &overlaps {
            let profile = family.mode(o.order, &points)?;
            let stretch = o.size_after / o.size_before;
            after.push(rescale_mode_profile(&points, &profile, stretch)?);
            before.push(profile);
        }
        Ok(ModeProfiles { points, pump, orders: orders.to_vec(), before, after, overlaps })
    }
}

fn check_abscissa(x: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::input(format!("abscissa values must be finite and non-negative, got {x}")));
    }
    Ok(())
}

/// sinh²(f·x)/sinh²(x), tending to f² as x → 0.
fn gain_scaled_factor(f: f64, x: f64) -> f64 {
    if f >= 1.0 {
        return 1.0;
    }
    if f <= 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return f * f;
    }
    (2.0 * (ln_sinh(f * x) - ln_sinh(x))).exp()
}

/// S = Σ_k g_k·λ̃_k·|u_k|² from explicit weights and factors.
pub fn synthesize_output_spectrum(
    spectrum: &dyn ModalSpectrum,
    weights: &[f64],
    factors: &[f64],
    arm: Arm,
    center_wavelength_um: f64,
) -> Result<SynthesizedSpectrum> {
    let n = spectrum.eigenvalues().len();
    if weights.len() != n || factors.len() != n {
        return Err(Error::input(format!(
            "spectrum has {n} modes but {} weights and {} factors were given",
            weights.len(),
            factors.len()
        )));
    }
    if factors.iter().any(|g| !(0.0..=1.0).contains(g)) {
        return Err(Error::input("amplification factors must lie in [0, 1]"));
    }
    let combined: Vec<f64> = weights.iter().zip(factors).map(|(w, g)| w * g).collect();
    let intensity = spectrum.weighted_density(&combined);
    let abscissa = spectrum.axis_points().to_vec();
    if intensity.len() != abscissa.len() {
        return Err(Error::input("mode density and spectrum grid disagree in length"));
    }
    let observable = match arm {
        Arm::Spatial => abscissa.iter().map(|q| q * center_wavelength_um / (2.0 * PI)).collect(),
        Arm::Temporal => {
            let w0 = angular_frequency(center_wavelength_um);
            abscissa.iter().map(|d| 2.0 * PI * crate::units::SPEED_OF_LIGHT_NM_PER_FS / (w0 + d)).collect()
        }
    };
    Ok(SynthesizedSpectrum {
        arm,
        abscissa,
        observable,
        intensity,
        factors: factors.to_vec(),
        total_weight: combined.iter().sum(),
        center_wavelength_um,
    })
}

/// Free-function forms of the [`Interferometer`] methods.
pub fn amplified_mode_scale(model: &Interferometer, distance_mm: f64) -> Result<f64> {
    model.amplified_mode_scale(distance_mm)
}

pub fn angular_width(model: &Interferometer, distance_mm: f64) -> Result<f64> {
    model.angular_width(distance_mm)
}

pub fn spectral_width(model: &Interferometer, k2d: f64) -> Result<SpectralWidth> {
    model.spectral_width(k2d)
}

pub fn sweep_width(model: &Interferometer, abscissa: &[f64]) -> Result<WidthCurve> {
    model.sweep_width(abscissa)
}
