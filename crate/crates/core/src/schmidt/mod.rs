//! Two-photon amplitude, Schmidt decomposition and gain weighting.

pub mod analytic;
pub mod columns;
pub mod decompose;
pub mod gain;
pub mod hermite;
pub mod kernel;

use serde::{Deserialize, Serialize};

pub use analytic::{AnalyticSchmidt, DoubleGaussian};
pub use decompose::{schmidt_decompose, SchmidtSpectrum};
pub use gain::{effective_mode_number, gained_spectrum, mean_photon_numbers, renormalize_weights, GainedSpectrum};
pub use hermite::{hermite_mode, ModeFamily, ModeKind};
pub use kernel::{build_tpa_kernel, Complex64, TpaKernel, UniformAxis};

use crate::error::{Error, Result};

/// What the interferometer needs from a Schmidt spectrum, however obtained.
pub trait ModalSpectrum {
    /// λ_k in descending order, summing to one.
    fn eigenvalues(&self) -> &[f64];
    /// Grid on which [`weighted_density`](Self::weighted_density) is sampled.
    fn axis_points(&self) -> &[f64];
    /// Σ_k w_k·|u_k(x)|² on the grid. Extra weights beyond the mode count are ignored.
    fn weighted_density(&self, weights: &[f64]) -> Vec<f64>;
    /// Scale s of the fundamental mode, |u₀|² ∝ exp(−x²/s²).
    fn fundamental_scale(&self) -> f64;

    fn schmidt_number(&self) -> f64 {
        1.0 / self.eigenvalues().iter().map(|l| l * l).sum::<f64>()
    }
}

/// Largest grid the automatic method will hand to the dense SVD.
pub const MAX_NUMERIC_POINTS: usize = 768;
const MIN_AUTO_POINTS: usize = 256;
/// Evaluation grid used by the analytic method.
const ANALYTIC_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SchmidtMethod {
    /// Numeric when the kernel fits on a [`MAX_NUMERIC_POINTS`] grid, analytic otherwise.
    #[default]
    Auto,
    Numeric,
    Analytic,
}

impl std::str::FromStr for SchmidtMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SchmidtMethod::Auto),
            "numeric" => Ok(SchmidtMethod::Numeric),
            "analytic" => Ok(SchmidtMethod::Analytic),
            other => Err(Error::input(format!(
                "unknown Schmidt method `{other}` (expected auto, numeric or analytic)"
            ))),
        }
    }
}

/// Either route to the spectrum of a double-Gaussian kernel.
#[derive(Debug, Clone)]
pub enum Spectrum {
    Numeric(SchmidtSpectrum),
    Analytic(AnalyticSchmidt),
}

impl ModalSpectrum for Spectrum {
    fn eigenvalues(&self) -> &[f64] {
        match self {
            Spectrum::Numeric(s) => s.eigenvalues(),
            Spectrum::Analytic(s) => ModalSpectrum::eigenvalues(s),
        }
    }

    fn axis_points(&self) -> &[f64] {
        match self {
            Spectrum::Numeric(s) => s.axis_points(),
            Spectrum::Analytic(s) => s.axis_points(),
        }
    }

    fn weighted_density(&self, weights: &[f64]) -> Vec<f64> {
        match self {
            Spectrum::Numeric(s) => s.weighted_density(weights),
            Spectrum::Analytic(s) => s.weighted_density(weights),
        }
    }

    fn fundamental_scale(&self) -> f64 {
        match self {
            Spectrum::Numeric(s) => s.fundamental_scale(),
            Spectrum::Analytic(s) => s.fundamental_scale(),
        }
    }
}

impl Spectrum {
    pub fn method(&self) -> SchmidtMethod {
        match self {
            Spectrum::Numeric(_) => SchmidtMethod::Numeric,
            Spectrum::Analytic(_) => SchmidtMethod::Analytic,
        }
    }

    /// Real profile of signal mode `k` on [`axis_points`](ModalSpectrum::axis_points).
    /// The double-Gaussian kernel is real, so the phase-fixed numeric modes are
    /// real up to rounding and only their real part is returned.
    pub fn mode_profile(&self, k: usize) -> Result<Vec<f64>> {
        let count = self.eigenvalues().len();
        if k >= count {
            return Err(Error::input(format!("mode {k} requested but only {count} modes are retained")));
        }
        Ok(match self {
            Spectrum::Numeric(s) => s.mode_s(k).iter().map(|z| z.re).collect(),
            Spectrum::Analytic(s) => s.mode(k),
        })
    }
}

/// Grid size that samples the narrower kernel width at two points per width
/// across the automatic half-span.
pub fn required_grid_points(model: &DoubleGaussian) -> usize {
    let probe = UniformAxis::for_double_gaussian(model.pump_width, model.pm_width, 2)
        .map(|a| -a.start)
        .unwrap_or(f64::INFINITY);
    let step = 0.5 * model.pump_width.min(model.pm_width);
    let n = (2.0 * probe / step).ceil() + 1.0;
    if n.is_finite() && n < usize::MAX as f64 {
        n as usize
    } else {
        usize::MAX
    }
}

/// Decomposes the double-Gaussian kernel of `model` by the chosen route.
pub fn decompose_double_gaussian(model: &DoubleGaussian, method: SchmidtMethod) -> Result<Spectrum> {
    let needed = required_grid_points(model);
    let numeric = match method {
        SchmidtMethod::Numeric => true,
        SchmidtMethod::Analytic => false,
        SchmidtMethod::Auto => needed <= MAX_NUMERIC_POINTS,
    };
    if numeric {
        if needed > 4 * MAX_NUMERIC_POINTS {
            return Err(Error::Numerical(format!(
                "kernel needs a {needed}-point grid for a dense decomposition; use the analytic method"
            )));
        }
        let n = needed.max(MIN_AUTO_POINTS);
        let axis = UniformAxis::for_double_gaussian(model.pump_width, model.pm_width, n)?;
        let kernel = build_tpa_kernel(model.pump_width, model.pm_width, &axis)?;
        Ok(Spectrum::Numeric(schmidt_decompose(&kernel)?))
    } else {
        let axis =
            UniformAxis::for_double_gaussian(model.pump_width, model.pm_width, ANALYTIC_POINTS)?;
        Ok(Spectrum::Analytic(AnalyticSchmidt::new(*model, axis)))
    }
}
