//! Spreading of Schmidt modes between the crystals.
//!
//! Spatial modes diffract over a free-space gap L; temporal modes disperse
//! over an accumulated GVD k″d. Both follow the same law: mode m has initial
//! size √(2m+1)·s₀ and spreads √(2m+1) times faster than the fundamental,
//!
//! ```text
//! size_m = √(2m+1) · √(s₀² + (D/s₀)²),    D = λL/π  or  D = k″d.
//! ```
//!
//! Sizes follow the Gaussian-beam convention: w₀ is the 1/e amplitude radius.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// √(2m+1), the size ratio of Hermite mode m to the fundamental.
pub fn mode_scale_factor(order: usize) -> f64 {
    (2.0 * order as f64 + 1.0).sqrt()
}

fn spread(size0: f64, lever: f64) -> f64 {
    size0.hypot(lever / size0)
}

/// A Hermite–Gauss beam family diffracting over a distance L.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialPropagation {
    /// Fundamental waist radius in µm.
    pub w0: f64,
    /// Wavelength in µm.
    pub wavelength: f64,
    /// Propagation distance in mm.
    pub distance: f64,
}

impl SpatialPropagation {
    pub fn new(w0: f64, wavelength: f64, distance: f64) -> Result<Self> {
        if !(w0 > 0.0 && w0.is_finite()) {
            return Err(Error::config(format!("waist must be positive, got {w0} µm")));
        }
        if !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(Error::config(format!("wavelength must be positive, got {wavelength} µm")));
        }
        if !(distance >= 0.0 && distance.is_finite()) {
            return Err(Error::config(format!("distance must be non-negative, got {distance} mm")));
        }
        Ok(SpatialPropagation { w0, wavelength, distance })
    }

    /// Half-angle divergence θ₀ = λ/(π w₀) of the fundamental, in rad.
    pub fn divergence(&self) -> f64 {
        self.wavelength / (PI * self.w0)
    }

    /// π w₀²/λ in mm.
    pub fn rayleigh_range(&self) -> f64 {
        PI * self.w0 * self.w0 / self.wavelength * 1e-3
    }

    /// Waist radius of order `m` after the gap, in µm.
    pub fn waist(&self, order: usize) -> f64 {
        let lever = self.wavelength * self.distance * 1e3 / PI;
        mode_scale_factor(order) * spread(self.w0, lever)
    }

    pub fn at_distance(&self, distance: f64) -> Result<Self> {
        Self::new(self.w0, self.wavelength, distance)
    }
}

/// A temporal Hermite-mode family dispersing through an accumulated k″d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalPropagation {
    /// Fundamental duration τ₀ in fs.
    pub tau0: f64,
    /// k″·d in fs².
    pub k2d: f64,
}

impl TemporalPropagation {
    pub fn new(tau0: f64, k2d: f64) -> Result<Self> {
        if !(tau0 > 0.0 && tau0.is_finite()) {
            return Err(Error::config(format!("mode duration must be positive, got {tau0} fs")));
        }
        if !(k2d >= 0.0 && k2d.is_finite()) {
            return Err(Error::config(format!("k″d must be non-negative, got {k2d} fs²")));
        }
        Ok(TemporalPropagation { tau0, k2d })
    }

    /// Duration of order `n` after the medium, in fs.
    pub fn duration(&self, order: usize) -> f64 {
        mode_scale_factor(order) * spread(self.tau0, self.k2d)
    }

    /// Ratio of the dispersed to the initial size; the same for every order.
    pub fn stretch(&self) -> f64 {
        spread(self.tau0, self.k2d) / self.tau0
    }
}

/// w_m(L) = √(2m+1)·√(w₀² + (λL/πw₀)²) in µm.
pub fn beam_waist_at(prop: &SpatialPropagation, order: usize) -> f64 {
    prop.waist(order)
}

/// τ_n(d) = √(2n+1)·√(τ₀² + (k″d/τ₀)²) in fs.
pub fn pulse_duration_at(prop: &TemporalPropagation, order: usize) -> f64 {
    prop.duration(order)
}

/// Linear interpolation of (xs, ys) at `x`, zero outside the samples.
/// `xs` must be ascending.
pub fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if xs.is_empty() || x < xs[0] || x > xs[xs.len() - 1] {
        return 0.0;
    }
    let i = xs.partition_point(|&p| p <= x);
    if i == 0 {
        return ys[0];
    }
    if i >= xs.len() {
        return ys[xs.len() - 1];
    }
    let (x0, x1) = (xs[i - 1], xs[i]);
    let t = (x - x0) / (x1 - x0);
    ys[i - 1] + t * (ys[i] - ys[i - 1])
}

/// Stretches a sampled amplitude profile about the origin by `stretch`,
/// resampling onto the same `points`: out(x) = ψ(x/stretch)/√stretch.
///
/// The 1/√stretch factor preserves ∫|ψ|². Samples that map outside the
/// input grid are taken as zero, so the grid has to hold the stretched mode.
pub fn rescale_mode_profile(points: &[f64], values: &[f64], stretch: f64) -> Result<Vec<f64>> {
    if !stretch.is_finite() {
        return Err(Error::input(format!("stretch must be finite, got {stretch}")));
    }
    if stretch < 1.0 {
        return Err(Error::input(format!("stretch must be at least 1, got {stretch}")));
    }
    if points.len() != values.len() {
        return Err(Error::input(format!(
            "profile has {} points but {} values",
            points.len(),
            values.len()
        )));
    }
    if points.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::input("profile points must be strictly ascending"));
    }
    if stretch == 1.0 {
        return Ok(values.to_vec());
    }
    let amp = stretch.sqrt().recip();
    Ok(points.iter().map(|&x| amp * interpolate(points, values, x / stretch)).collect())
}
