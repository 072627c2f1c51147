//! Hermite-function mode families.
//!
//! Both the spatial (Hermite–Gauss) and temporal Schmidt modes of the
//! double-Gaussian kernel are Hermite functions
//!
//! ```text
//! ψ_m(x) = (2^m m! √π s)^(-1/2) · H_m(x/s) · exp(−x²/2s²)
//! ```
//!
//! evaluated here by the normalised three-term recurrence. The recurrence
//! carries a per-point exponent so that neither `exp(−x²/2s²)` underflowing
//! nor `H_m` overflowing at high order poisons the product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PI_POW_NEG_QUARTER: f64 = 0.751_125_544_464_942_5;
const RESCALE_ABOVE: f64 = 1e200;
const LN_RESCALE: f64 = 460.517_018_598_809_1; // ln(1e200)

/// Walks ψ_0(ξ) … ψ_{n_max}(ξ) for unit scale, calling `visit(n, ψ_n(ξ))`.
pub(crate) fn hermite_functions_at(xi: f64, n_max: usize, mut visit: impl FnMut(usize, f64)) {
    let mut prev = 0.0_f64;
    let mut cur = PI_POW_NEG_QUARTER;
    let mut log_scale = -0.5 * xi * xi;
    let mut factor = log_scale.exp();
    for n in 0..=n_max {
        visit(n, cur * factor);
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * xi * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            prev /= RESCALE_ABOVE;
            log_scale += LN_RESCALE;
            factor = log_scale.exp();
        }
    }
}

/// Whether a family describes transverse beam profiles or pulse envelopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Spatial,
    Temporal,
}

/// An analytic Hermite mode set.
///
/// `scale` follows the propagation conventions: for a spatial family it is
/// the Gaussian waist w₀ (1/e amplitude radius, field ∝ exp(−x²/w₀²)); for a
/// temporal family it is the pulse parameter τ₀ of field ∝ exp(−t²/2τ₀²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeFamily {
    pub kind: ModeKind,
    /// w₀ in µm or τ₀ in fs.
    pub scale: f64,
    /// Wavelength in µm (spatial) or centre angular frequency in rad/fs (temporal).
    pub carrier: f64,
    pub max_order: usize,
}

impl ModeFamily {
    pub fn new(kind: ModeKind, scale: f64, carrier: f64, max_order: usize) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::config(format!("mode scale must be positive, got {scale}")));
        }
        if !(carrier > 0.0 && carrier.is_finite()) {
            return Err(Error::config(format!("mode carrier must be positive, got {carrier}")));
        }
        Ok(ModeFamily { kind, scale, carrier, max_order })
    }

    /// The `s` in `H_m(x/s)·exp(−x²/2s²)`.
    pub fn function_scale(&self) -> f64 {
        match self.kind {
            ModeKind::Spatial => self.scale / std::f64::consts::SQRT_2,
            ModeKind::Temporal => self.scale,
        }
    }

    /// Size of mode `m`: √(2m+1) times the fundamental scale.
    pub fn mode_size(&self, order: usize) -> f64 {
        (2.0 * order as f64 + 1.0).sqrt() * self.scale
    }

    /// Same family with every mode stretched by `factor`.
    pub fn stretched(&self, factor: f64) -> Self {
        ModeFamily { scale: self.scale * factor, ..*self }
    }

    fn check_grid(&self, order: usize, points: &[f64]) -> Result<()> {
        if order > self.max_order {
            return Err(Error::config(format!(
                "mode order {order} exceeds the family's maximum {}",
                self.max_order
            )));
        }
        let reach = 2.0 * self.function_scale() * (2.0 * order as f64 + 1.0).sqrt();
        let lo = points.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = points.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !(lo <= -reach && hi >= reach) {
            return Err(Error::config(format!(
                "grid [{lo}, {hi}] is too narrow for order {order}; it must reach ±{reach}"
            )));
        }
        Ok(())
    }

    /// ψ_order sampled at `points`, L²-normalised on the continuum.
    pub fn mode(&self, order: usize, points: &[f64]) -> Result<Vec<f64>> {
        self.check_grid(order, points)?;
        let s = self.function_scale();
        let norm = s.sqrt().recip();
        Ok(points
            .iter()
            .map(|&x| {
                let mut value = 0.0;
                hermite_functions_at(x / s, order, |n, psi| {
                    if n == order {
                        value = psi;
                    }
                });
                value * norm
            })
            .collect())
    }

    /// Σₖ weights[k]·ψ_k(x)² at each point, without storing the modes.
    pub fn weighted_density(&self, points: &[f64], weights: &[f64]) -> Vec<f64> {
        if weights.is_empty() {
            return vec![0.0; points.len()];
        }
        let s = self.function_scale();
        let n_max = weights.len() - 1;
        points
            .iter()
            .map(|&x| {
                let mut acc = 0.0;
                hermite_functions_at(x / s, n_max, |n, psi| acc += weights[n] * psi * psi);
                acc / s
            })
            .collect()
    }
}

/// Free-function form of [`ModeFamily::mode`].
pub fn hermite_mode(family: &ModeFamily, order: usize, points: &[f64]) -> Result<Vec<f64>> {
    family.mode(order, points)
}
