//! Python bindings: materials, Schmidt spectra, propagation and the
//! configured interferometer.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use su11_core::interferometer::{self as core_ifm, presets, Gap};
use su11_core::propagation::{SpatialPropagation, TemporalPropagation};
use su11_core::schmidt::{self, ModalSpectrum};
use su11_core::{materials, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Numerical(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for su11_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// Refractive index of a built-in material at a wavelength in µm.
#[pyfunction]
fn refractive_index(material: &str, wavelength_um: f64) -> PyResult<f64> {
    materials::material(material).py()?.refractive_index(wavelength_um).py()
}

/// Group-velocity dispersion k″ in fs²/mm at a wavelength in µm.
#[pyfunction]
fn gvd(material: &str, wavelength_um: f64) -> PyResult<f64> {
    materials::material(material).py()?.gvd(wavelength_um).py()
}

#[pyfunction]
fn material_names() -> Vec<String> {
    materials::MaterialCatalog::builtin().names()
}

#[pyfunction]
fn preset_names() -> Vec<String> {
    presets::PRESET_NAMES.iter().map(|s| s.to_string()).collect()
}

/// λ̃_k = sinh²(√λ_k·G) / Σ sinh²(√λ_j·G).
#[pyfunction]
fn renormalize_weights(eigenvalues: Vec<f64>, gain: f64) -> PyResult<Vec<f64>> {
    schmidt::renormalize_weights(&eigenvalues, gain).py()
}

#[pyfunction]
fn effective_mode_number(weights: Vec<f64>) -> PyResult<f64> {
    schmidt::effective_mode_number(&weights).py()
}

/// Numerical Schmidt decomposition of the double-Gaussian kernel on
/// `points` grid points. Returns a dict with `eigenvalues`, `schmidt_number`,
/// `x` and the first `modes` signal mode profiles.
#[pyfunction]
#[pyo3(signature = (pump_width, phase_matching_width, points = 512, modes = 5))]
fn schmidt_decompose<'py>(
    py: Python<'py>,
    pump_width: f64,
    phase_matching_width: f64,
    points: usize,
    modes: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let axis = schmidt::UniformAxis::for_double_gaussian(pump_width, phase_matching_width, points).py()?;
    let kernel = schmidt::build_tpa_kernel(pump_width, phase_matching_width, &axis).py()?;
    let spectrum = schmidt::schmidt_decompose(&kernel).py()?;
    let profiles: Vec<Vec<f64>> =
        (0..modes.min(spectrum.len())).map(|k| spectrum.mode_s(k).iter().map(|z| z.re).collect()).collect();
    let out = PyDict::new(py);
    out.set_item("eigenvalues", spectrum.eigenvalues().to_vec())?;
    out.set_item("schmidt_number", spectrum.schmidt_number())?;
    out.set_item("x", spectrum.axis_points().to_vec())?;
    out.set_item("modes", profiles)?;
    Ok(out)
}

/// Closed-form eigenvalues (1 − μ)μⁿ of the double-Gaussian kernel.
#[pyfunction]
fn double_gaussian_eigenvalues(pump_width: f64, phase_matching_width: f64) -> PyResult<Vec<f64>> {
    Ok(schmidt::DoubleGaussian::new(pump_width, phase_matching_width).py()?.eigenvalues())
}

/// Waist in µm of Hermite–Gauss order `order` after `distance_mm`.
#[pyfunction]
fn beam_waist_at(w0_um: f64, wavelength_um: f64, distance_mm: f64, order: usize) -> PyResult<f64> {
    Ok(SpatialPropagation::new(w0_um, wavelength_um, distance_mm).py()?.waist(order))
}

/// Duration in fs of temporal mode `order` after an accumulated k″d in fs².
#[pyfunction]
fn pulse_duration_at(tau0_fs: f64, k2d_fs2: f64, order: usize) -> PyResult<f64> {
    Ok(TemporalPropagation::new(tau0_fs, k2d_fs2).py()?.duration(order))
}

/// A configured interferometer with its Schmidt spectrum.
#[pyclass(name = "Interferometer", frozen)]
struct PyInterferometer {
    inner: core_ifm::Interferometer,
}

#[pymethods]
impl PyInterferometer {
    /// Build from a preset name, optionally overriding the gain.
    #[staticmethod]
    #[pyo3(signature = (name, gain = None))]
    fn from_preset(name: &str, gain: Option<f64>) -> PyResult<Self> {
        let mut config = presets::preset(name).py()?;
        if let Some(g) = gain {
            config.gain = g;
        }
        Ok(PyInterferometer { inner: core_ifm::Interferometer::new(config).py()? })
    }

    /// Build from the JSON configuration format used by the CLI.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let config = core_ifm::InterferometerConfig::from_json(text).py()?;
        Ok(PyInterferometer { inner: core_ifm::Interferometer::new(config).py()? })
    }

    fn config_json(&self) -> String {
        self.inner.config().to_json()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.spectrum().eigenvalues().to_vec()
    }

    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    #[getter]
    fn schmidt_number(&self) -> f64 {
        self.inner.spectrum().schmidt_number()
    }

    /// w₀ in µm or τ₀ in fs.
    #[getter]
    fn fundamental_size(&self) -> f64 {
        self.inner.fundamental_size()
    }

    #[getter]
    fn pump_gate(&self) -> f64 {
        self.inner.pump_gate()
    }

    fn amplified_mode_scale(&self, distance_mm: f64) -> PyResult<f64> {
        self.inner.amplified_mode_scale(distance_mm).py()
    }

    fn max_amplified_order(&self, distance_mm: f64) -> PyResult<Option<usize>> {
        self.inner.max_amplified_order(distance_mm).py()
    }

    fn angular_width(&self, distance_mm: f64) -> PyResult<f64> {
        self.inner.angular_width(distance_mm).py()
    }

    fn saturated_angular_width(&self, distance_mm: f64) -> PyResult<f64> {
        self.inner.saturated_angular_width(distance_mm).py()
    }

    /// (Δω in rad/fs, FWHM in nm) at k″d in fs².
    fn spectral_width(&self, k2d_fs2: f64) -> PyResult<(f64, f64)> {
        let w = self.inner.spectral_width(k2d_fs2).py()?;
        Ok((w.delta_omega, w.fwhm_nm))
    }

    /// k″d in fs² of a gap such as "SF6:10cm".
    fn gap_k2d(&self, gap: &str) -> PyResult<f64> {
        self.inner.gap_k2d(&Gap::parse(gap).py()?).py()
    }

    /// (abscissa, width) sorted by abscissa.
    fn sweep_width(&self, abscissa: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let curve = self.inner.sweep_width(&abscissa).py()?;
        Ok((curve.abscissa, curve.width))
    }

    /// Output envelope behind `gap`: dict with `observable`, `intensity`,
    /// `factors`, `total_weight` and `fwhm`.
    fn synthesize<'py>(&self, py: Python<'py>, gap: &str) -> PyResult<Bound<'py, PyDict>> {
        let s = self.inner.synthesize_output_spectrum(&Gap::parse(gap).py()?).py()?;
        let out = PyDict::new(py);
        out.set_item("fwhm", s.fwhm())?;
        out.set_item("observable", s.observable)?;
        out.set_item("intensity", s.intensity)?;
        out.set_item("factors", s.factors)?;
        out.set_item("total_weight", s.total_weight)?;
        Ok(out)
    }

    /// One dict per order with the mode size before and after `gap`.
    fn mode_overlaps<'py>(&self, py: Python<'py>, orders: Vec<usize>, gap: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let overlaps = self.inner.mode_overlaps(&orders, &Gap::parse(gap).py()?).py()?;
        overlaps
            .iter()
            .map(|o| {
                let d = PyDict::new(py);
                d.set_item("order", o.order)?;
                d.set_item("size_before", o.size_before)?;
                d.set_item("size_after", o.size_after)?;
                d.set_item("pump_half_size", o.pump_half_size)?;
                d.set_item("inside_after", o.inside_after())?;
                Ok(d)
            })
            .collect()
    }
}

#[pymodule]
fn su11(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(refractive_index, m)?)?;
    m.add_function(wrap_pyfunction!(gvd, m)?)?;
    m.add_function(wrap_pyfunction!(material_names, m)?)?;
    m.add_function(wrap_pyfunction!(preset_names, m)?)?;
    m.add_function(wrap_pyfunction!(renormalize_weights, m)?)?;
    m.add_function(wrap_pyfunction!(effective_mode_number, m)?)?;
    m.add_function(wrap_pyfunction!(schmidt_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(double_gaussian_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(beam_waist_at, m)?)?;
    m.add_function(wrap_pyfunction!(pulse_duration_at, m)?)?;
    m.add_class::<PyInterferometer>()?;
    Ok(())
}
