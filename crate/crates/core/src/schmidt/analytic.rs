//! Closed-form Schmidt decomposition of the double-Gaussian kernel.
//!
//! For F ∝ exp(−(x+y)²/4σ_p²)·exp(−(x−y)²/4σ_pm²) and r = σ_pm/σ_p the
//! eigenvalues are geometric, λ_n = (1−µ)µⁿ with µ = ((r−1)/(r+1))², and the
//! modes are Hermite functions of scale s = √(σ_p·σ_pm). Highly entangled
//! kernels (r in the hundreds) would need grids far beyond a dense SVD, so the
//! interferometer falls back to this form for them.

use serde::{Deserialize, Serialize};

use super::hermite::hermite_functions_at;
use super::kernel::UniformAxis;
use super::ModalSpectrum;
use crate::error::{Error, Result};

/// Modes with λ_n/λ₀ below this are dropped.
pub const ANALYTIC_EIGENVALUE_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleGaussian {
    pub pump_width: f64,
    pub pm_width: f64,
}

impl DoubleGaussian {
    pub fn new(pump_width: f64, pm_width: f64) -> Result<Self> {
        for (name, w) in [("pump", pump_width), ("phase-matching", pm_width)] {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::config(format!("{name} width must be positive, got {w}")));
            }
        }
        Ok(DoubleGaussian { pump_width, pm_width })
    }

    pub fn ratio(&self) -> f64 {
        self.pm_width / self.pump_width
    }

    /// Geometric ratio µ of successive eigenvalues.
    pub fn mu(&self) -> f64 {
        let r = self.ratio();
        ((r - 1.0) / (r + 1.0)).powi(2)
    }

    /// K = (r + 1/r)/2.
    pub fn schmidt_number(&self) -> f64 {
        let r = self.ratio();
        0.5 * (r + r.recip())
    }

    /// s in ψ ∝ H_n(x/s)·exp(−x²/2s²).
    pub fn schmidt_width(&self) -> f64 {
        (self.pump_width * self.pm_width).sqrt()
    }

    /// RMS width of the single-photon marginal |F|² integrated over the partner.
    pub fn marginal_rms_width(&self) -> f64 {
        0.5 * self.pump_width.hypot(self.pm_width)
    }

    /// λ_0 … λ_n down to the cutoff, renormalised to sum to one.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mu = self.mu();
        if mu == 0.0 {
            return vec![1.0];
        }
        let count = (ANALYTIC_EIGENVALUE_CUTOFF.ln() / mu.ln()).floor() as usize + 1;
        let mut out: Vec<f64> = (0..count).map(|n| (1.0 - mu) * mu.powi(n as i32)).collect();
        let total: f64 = out.iter().sum();
        out.iter_mut().for_each(|l| *l /= total);
        out
    }
}

/// Analytic spectrum sampled on an evaluation grid.
#[derive(Debug, Clone)]
pub struct AnalyticSchmidt {
    model: DoubleGaussian,
    eigenvalues: Vec<f64>,
    axis: UniformAxis,
    axis_points: Vec<f64>,
}

impl AnalyticSchmidt {
    pub fn new(model: DoubleGaussian, axis: UniformAxis) -> Self {
        AnalyticSchmidt { eigenvalues: model.eigenvalues(), axis_points: axis.points(), model, axis }
    }

    pub fn model(&self) -> &DoubleGaussian {
        &self.model
    }

    pub fn axis(&self) -> &UniformAxis {
        &self.axis
    }

    /// ψ_k on the evaluation grid, normalised on the continuum.
    pub fn mode(&self, k: usize) -> Vec<f64> {
        let s = self.model.schmidt_width();
        let norm = s.sqrt().recip();
        self.axis_points
            .iter()
            .map(|&x| {
                let mut v = 0.0;
                hermite_functions_at(x / s, k, |n, psi| {
                    if n == k {
                        v = psi
                    }
                });
                v * norm
            })
            .collect()
    }
}

impl ModalSpectrum for AnalyticSchmidt {
    fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    fn axis_points(&self) -> &[f64] {
        &self.axis_points
    }

    fn weighted_density(&self, weights: &[f64]) -> Vec<f64> {
        let s = self.model.schmidt_width();
        let n = weights.len().min(self.eigenvalues.len());
        if n == 0 {
            return vec![0.0; self.axis_points.len()];
        }
        self.axis_points
            .iter()
            .map(|&x| {
                let mut acc = 0.0;
                hermite_functions_at(x / s, n - 1, |k, psi| acc += weights[k] * psi * psi);
                acc / s
            })
            .collect()
    }

    fn fundamental_scale(&self) -> f64 {
        self.model.schmidt_width()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_four_closed_form() {
        let m = DoubleGaussian::new(1.0, 4.0).unwrap();
        assert!((m.mu() - 0.36).abs() < 1e-15);
        assert!((m.schmidt_number() - 2.125).abs() < 1e-15);
        let l = m.eigenvalues();
        let k = 1.0 / l.iter().map(|x| x * x).sum::<f64>();
        assert!((k - 2.125).abs() < 1e-9);
        assert!((l.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn separable_model_is_single_mode() {
        let m = DoubleGaussian::new(2.0, 2.0).unwrap();
        assert_eq!(m.eigenvalues(), vec![1.0]);
    }

    #[test]
    fn weighted_density_reproduces_marginal() {
        let m = DoubleGaussian::new(1.0, 6.0).unwrap();
        let axis = UniformAxis::symmetric(25.0, 501).unwrap();
        let a = AnalyticSchmidt::new(m, axis);
        let density = a.weighted_density(a.eigenvalues());
        let sigma = m.marginal_rms_width();
        let norm = (2.0 * std::f64::consts::PI).sqrt() * sigma;
        for (x, d) in a.axis_points().iter().zip(&density) {
            let expected = (-x * x / (2.0 * sigma * sigma)).exp() / norm;
            assert!((d - expected).abs() < 1e-9, "x = {x}: {d} vs {expected}");
        }
    }
}
