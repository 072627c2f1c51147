use faer::Mat;

use super::kernel::{Complex64, TpaKernel, UniformAxis};
use super::ModalSpectrum;
use crate::error::{Error, Result};

/// Singular values below this fraction of the largest are dropped.
pub const SINGULAR_VALUE_CUTOFF: f64 = 1e-12;

/// Schmidt eigenvalues and modes of a [`TpaKernel`].
///
/// Mode `k` is column `k` of [`modes_s`](Self::modes_s) /
/// [`modes_i`](Self::modes_i), scaled so that Σ|u_k|²·grid_step = 1.
/// Each pair carries the phase convention that the largest-magnitude sample
/// of u_k is real and positive.
#[derive(Debug, Clone)]
pub struct SchmidtSpectrum {
    eigenvalues: Vec<f64>,
    modes_s: Mat<Complex64>,
    modes_i: Mat<Complex64>,
    axis: UniformAxis,
    axis_points: Vec<f64>,
    retained_norm: f64,
}

/// Singular-value factorisation of the kernel matrix.
pub fn schmidt_decompose(kernel: &TpaKernel) -> Result<SchmidtSpectrum> {
    let f = kernel.amplitude();
    if f.nrows() != f.ncols() {
        return Err(Error::input("kernel matrix is not square"));
    }
    let n = f.nrows();
    let finite = (0..n).all(|j| (0..n).all(|i| f[(i, j)].re.is_finite() && f[(i, j)].im.is_finite()));
    if !finite {
        return Err(Error::input("kernel matrix has non-finite entries"));
    }
    let svd = f
        .svd()
        .map_err(|e| Error::Numerical(format!("singular value decomposition failed: {e:?}")))?;
    let (u, v) = (svd.U(), svd.V());
    let sigma: Vec<f64> = svd.S().column_vector().iter().map(|s| s.re).collect();
    if sigma.iter().any(|s| !s.is_finite()) {
        return Err(Error::Numerical("SVD produced non-finite singular values".into()));
    }

    let mut order: Vec<usize> = (0..sigma.len()).collect();
    // Stable sort keeps the factorisation's order within degenerate pairs.
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));
    let top = sigma[order[0]];
    order.retain(|&k| sigma[k] >= SINGULAR_VALUE_CUTOFF * top);

    let total: f64 = order.iter().map(|&k| sigma[k] * sigma[k]).sum();
    let inv_sqrt_dx = kernel.axis().step.sqrt().recip();
    let m = order.len();
    let mut modes_s = Mat::<Complex64>::zeros(n, m);
    let mut modes_i = Mat::<Complex64>::zeros(n, m);
    let mut eigenvalues = Vec::with_capacity(m);
    for (col, &k) in order.iter().enumerate() {
        eigenvalues.push(sigma[k] * sigma[k] / total);
        let pivot = (0..n).max_by(|&a, &b| u[(a, k)].norm().total_cmp(&u[(b, k)].norm())).unwrap_or(0);
        let phase = {
            let z = u[(pivot, k)];
            if z.norm() > 0.0 { z.conj() / z.norm() } else { Complex64::new(1.0, 0.0) }
        };
        // F = U·S·Vᴴ, so the idler mode is the conjugate of V's column.
        for r in 0..n {
            modes_s[(r, col)] = u[(r, k)] * phase * inv_sqrt_dx;
            modes_i[(r, col)] = (v[(r, k)] * phase).conj() * inv_sqrt_dx;
        }
    }

    Ok(SchmidtSpectrum {
        eigenvalues,
        modes_s,
        modes_i,
        axis: *kernel.axis(),
        axis_points: kernel.axis().points(),
        retained_norm: total.sqrt(),
    })
}

impl SchmidtSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Signal modes as columns.
    pub fn modes_s(&self) -> &Mat<Complex64> {
        &self.modes_s
    }

    /// Idler modes as columns.
    pub fn modes_i(&self) -> &Mat<Complex64> {
        &self.modes_i
    }

    pub fn mode_s(&self, k: usize) -> Vec<Complex64> {
        self.modes_s.col(k).iter().cloned().collect()
    }

    pub fn mode_i(&self, k: usize) -> Vec<Complex64> {
        self.modes_i.col(k).iter().cloned().collect()
    }

    pub fn axis(&self) -> &UniformAxis {
        &self.axis
    }

    pub fn grid_step(&self) -> f64 {
        self.axis.step
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// K = 1/Σλ_k².
    pub fn schmidt_number(&self) -> f64 {
        1.0 / self.eigenvalues.iter().map(|l| l * l).sum::<f64>()
    }

    /// Σ_k √λ_k u_k v_kᵀ, in the units of the normalised kernel matrix.
    pub fn reconstruct(&self) -> Mat<Complex64> {
        let n = self.axis.len;
        let dx = self.axis.step;
        let weights = Mat::<Complex64>::from_fn(self.len(), self.len(), |i, j| {
            let w = if i == j { self.eigenvalues[i].sqrt() * self.retained_norm * dx } else { 0.0 };
            Complex64::new(w, 0.0)
        });
        debug_assert_eq!(self.modes_s.nrows(), n);
        &self.modes_s * &weights * self.modes_i.transpose()
    }

    /// RMS width of |u_k|² about its centroid.
    pub fn mode_rms_width(&self, k: usize) -> f64 {
        let dx = self.axis.step;
        let col = self.modes_s.col(k);
        let density: Vec<f64> = col.iter().map(|z| z.norm_sqr()).collect();
        let mass: f64 = density.iter().sum::<f64>() * dx;
        let mean: f64 =
            density.iter().zip(&self.axis_points).map(|(d, x)| d * x).sum::<f64>() * dx / mass;
        let var: f64 = density
            .iter()
            .zip(&self.axis_points)
            .map(|(d, x)| d * (x - mean) * (x - mean))
            .sum::<f64>()
            * dx
            / mass;
        var.sqrt()
    }
}

impl ModalSpectrum for SchmidtSpectrum {
    fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    fn axis_points(&self) -> &[f64] {
        &self.axis_points
    }

    fn weighted_density(&self, weights: &[f64]) -> Vec<f64> {
        let n = self.axis.len;
        let mut out = vec![0.0; n];
        for (k, w) in weights.iter().enumerate().take(self.len()) {
            if *w == 0.0 {
                continue;
            }
            for (o, z) in out.iter_mut().zip(self.modes_s.col(k).iter()) {
                *o += w * z.norm_sqr();
            }
        }
        out
    }

    /// For a Gaussian |u₀|² ∝ exp(−x²/s²) the RMS width is s/√2.
    fn fundamental_scale(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.mode_rms_width(0)
    }
}
