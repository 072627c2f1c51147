use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex64 = faer::c64;

/// Smallest grid the kernel builder accepts.
pub const MIN_KERNEL_POINTS: usize = 64;
/// Largest |F| allowed on the grid boundary, relative to the peak.
pub const BOUNDARY_TOLERANCE: f64 = 1e-3;
/// Half-span of [`UniformAxis::for_double_gaussian`] in units of √(σ_p² + σ_pm²).
/// The boundary value is then exp(−3.2²) ≈ 4e-5 of the peak.
const AUTO_HALF_SPAN: f64 = 3.2;

/// A uniform 1-D grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformAxis {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformAxis {
    /// `len` points spanning [−half_span, half_span].
    pub fn symmetric(half_span: f64, len: usize) -> Result<Self> {
        if !(half_span > 0.0 && half_span.is_finite()) || len < 2 {
            return Err(Error::config(format!(
                "axis needs a positive span and at least two points (got ±{half_span}, {len})"
            )));
        }
        Ok(UniformAxis { start: -half_span, step: 2.0 * half_span / (len - 1) as f64, len })
    }

    /// A symmetric axis that holds the double-Gaussian kernel with a
    /// negligible boundary value.
    pub fn for_double_gaussian(pump_width: f64, phase_matching_width: f64, len: usize) -> Result<Self> {
        let half = AUTO_HALF_SPAN * pump_width.hypot(phase_matching_width);
        Self::symmetric(half, len)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.point(i)).collect()
    }

    pub fn end(&self) -> f64 {
        self.point(self.len - 1)
    }
}

/// Discretised two-photon amplitude F(x_s, x_i) on a shared signal/idler grid.
///
/// The matrix is normalised to unit Frobenius norm on construction.
#[derive(Debug, Clone)]
pub struct TpaKernel {
    axis: UniformAxis,
    amplitude: Mat<Complex64>,
}

impl TpaKernel {
    /// Wraps an arbitrary amplitude matrix sampled on `axis` × `axis`.
    pub fn new(axis: UniformAxis, amplitude: Mat<Complex64>) -> Result<Self> {
        if amplitude.nrows() != amplitude.ncols() {
            return Err(Error::input(format!(
                "amplitude matrix must be square, got {}×{}",
                amplitude.nrows(),
                amplitude.ncols()
            )));
        }
        if amplitude.nrows() != axis.len {
            return Err(Error::input(format!(
                "amplitude is {0}×{0} but the axis has {1} points",
                amplitude.nrows(),
                axis.len
            )));
        }
        let n = amplitude.nrows();
        let finite = (0..n).all(|j| (0..n).all(|i| {
            let z = amplitude[(i, j)];
            z.re.is_finite() && z.im.is_finite()
        }));
        if !finite {
            return Err(Error::input("amplitude matrix contains non-finite entries"));
        }
        let norm = amplitude.norm_l2();
        if norm == 0.0 {
            return Err(Error::input("amplitude matrix is identically zero"));
        }
        let amplitude = Mat::from_fn(n, n, |i, j| amplitude[(i, j)] / norm);
        Ok(TpaKernel { axis, amplitude })
    }

    pub fn axis(&self) -> &UniformAxis {
        &self.axis
    }

    /// Signal and idler share the grid; both accessors return it.
    pub fn axis_s(&self) -> &UniformAxis {
        &self.axis
    }

    pub fn axis_i(&self) -> &UniformAxis {
        &self.axis
    }

    pub fn amplitude(&self) -> &Mat<Complex64> {
        &self.amplitude
    }

    pub fn len(&self) -> usize {
        self.axis.len
    }

    pub fn is_empty(&self) -> bool {
        self.axis.len == 0
    }
}

/// Double-Gaussian amplitude
/// F = exp(−(x_s+x_i)²/4σ_p²)·exp(−(x_s−x_i)²/4σ_pm²), normalised.
pub fn build_tpa_kernel(pump_width: f64, phase_matching_width: f64, axis: &UniformAxis) -> Result<TpaKernel> {
    for (name, w) in [("pump", pump_width), ("phase-matching", phase_matching_width)] {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::config(format!("{name} width must be positive, got {w}")));
        }
    }
    if axis.len < MIN_KERNEL_POINTS {
        return Err(Error::config(format!(
            "kernel grid needs at least {MIN_KERNEL_POINTS} points, got {}",
            axis.len
        )));
    }
    let narrow = pump_width.min(phase_matching_width);
    if axis.step > narrow {
        return Err(Error::config(format!(
            "grid step {} does not resolve the narrower kernel width {narrow}",
            axis.step
        )));
    }
    let a = 0.25 / (pump_width * pump_width);
    let b = 0.25 / (phase_matching_width * phase_matching_width);
    let n = axis.len;
    let amplitude = Mat::from_fn(n, n, |i, j| {
        let (xs, xi) = (axis.point(i), axis.point(j));
        let sum = xs + xi;
        let diff = xs - xi;
        Complex64::new((-a * sum * sum - b * diff * diff).exp(), 0.0)
    });

    let peak = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).fold(0.0_f64, |m, (i, j)| m.max(amplitude[(i, j)].norm()));
    let edge = (0..n)
        .flat_map(|k| [(0, k), (n - 1, k), (k, 0), (k, n - 1)])
        .fold(0.0_f64, |m, (i, j)| m.max(amplitude[(i, j)].norm()));
    if edge > BOUNDARY_TOLERANCE * peak {
        return Err(Error::config(format!(
            "kernel is truncated by the grid: boundary amplitude {:.3e} of peak exceeds {BOUNDARY_TOLERANCE:e}",
            edge / peak
        )));
    }
    TpaKernel::new(*axis, amplitude)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalised_and_symmetric() {
        let axis = UniformAxis::for_double_gaussian(1.0, 4.0, 128).unwrap();
        let k = build_tpa_kernel(1.0, 4.0, &axis).unwrap();
        assert!((k.amplitude().norm_l2() - 1.0).abs() < 1e-12);
        let f = k.amplitude();
        for i in 0..128 {
            for j in 0..128 {
                assert!((f[(i, j)] - f[(j, i)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_degenerate_widths() {
        let axis = UniformAxis::symmetric(10.0, 128).unwrap();
        assert!(matches!(build_tpa_kernel(0.0, 1.0, &axis), Err(Error::Config(_))));
        assert!(matches!(build_tpa_kernel(1.0, -2.0, &axis), Err(Error::Config(_))));
        assert!(build_tpa_kernel(f64::NAN, 1.0, &axis).is_err());
    }

    #[test]
    fn rejects_truncating_or_coarse_grids() {
        let narrow = UniformAxis::symmetric(4.0, 128).unwrap();
        assert!(matches!(build_tpa_kernel(1.0, 4.0, &narrow), Err(Error::Config(_))));
        let few = UniformAxis::symmetric(20.0, 32).unwrap();
        assert!(build_tpa_kernel(1.0, 4.0, &few).is_err());
        let coarse = UniformAxis::symmetric(20.0, 64).unwrap();
        assert!(build_tpa_kernel(0.1, 4.0, &coarse).is_err());
    }

    #[test]
    fn kernel_constructor_validates_shape() {
        let axis = UniformAxis::symmetric(1.0, 4).unwrap();
        let rect = Mat::from_fn(4, 3, |_, _| Complex64::new(1.0, 0.0));
        assert!(matches!(TpaKernel::new(axis, rect), Err(Error::Input(_))));
        let mut bad = Mat::from_fn(4, 4, |_, _| Complex64::new(1.0, 0.0));
        bad[(1, 2)] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(TpaKernel::new(axis, bad), Err(Error::Input(_))));
    }
}
