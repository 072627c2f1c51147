//! Refractive index and group-velocity dispersion from Sellmeier data.
//!
//! Materials are read from `data/materials.toml`, which is compiled into the
//! crate. See that file for the record layout.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::SPEED_OF_LIGHT_NM_PER_FS;

/// The shipped material table, verbatim.
pub const MATERIALS_TOML: &str = include_str!("../data/materials.toml");

/// Relative angular-frequency step used for the GVD finite difference.
pub const GVD_RELATIVE_STEP: f64 = 1e-4;

const SPEED_OF_LIGHT_MM_PER_FS: f64 = SPEED_OF_LIGHT_NM_PER_FS * 1e-6;

/// A named medium with a three-term Sellmeier dispersion formula.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Material {
    pub name: String,
    /// Dimensionless numerators B₁..B₃.
    pub sellmeier_b: [f64; 3],
    /// Resonance terms C₁..C₃ in µm².
    pub sellmeier_c: [f64; 3],
    /// Validity window (λ_min, λ_max) in µm.
    pub valid_range: (f64, f64),
}

#[derive(Debug, Deserialize)]
struct MaterialRecord {
    name: String,
    b1: f64,
    b2: f64,
    b3: f64,
    c1: f64,
    c2: f64,
    c3: f64,
    lambda_min_um: f64,
    lambda_max_um: f64,
}

#[derive(Debug, Deserialize)]
struct MaterialFile {
    format_version: u32,
    material: Vec<MaterialRecord>,
}

fn angular_frequency(wavelength_um: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT_NM_PER_FS / (wavelength_um * 1e3)
}

fn wavelength_um(omega: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT_NM_PER_FS / omega * 1e-3
}

impl Material {
    fn check_range(&self, wavelength_um: f64) -> Result<()> {
        let (min, max) = self.valid_range;
        // NaN fails both comparisons and lands here too.
        if !(wavelength_um > min && wavelength_um < max) {
            return Err(Error::OutOfRange {
                material: self.name.clone(),
                wavelength_um,
                min_um: min,
                max_um: max,
            });
        }
        Ok(())
    }

    fn n_squared_minus_one(&self, wavelength_um: f64) -> f64 {
        let l2 = wavelength_um * wavelength_um;
        self.sellmeier_b
            .iter()
            .zip(&self.sellmeier_c)
            .map(|(b, c)| b * l2 / (l2 - c))
            .sum()
    }

    /// Refractive index at `wavelength_um`.
    pub fn refractive_index(&self, wavelength_um: f64) -> Result<f64> {
        self.check_range(wavelength_um)?;
        Ok((1.0 + self.n_squared_minus_one(wavelength_um)).sqrt())
    }

    /// Group-velocity dispersion k″ = d²k/dω² in fs²/mm.
    pub fn gvd(&self, wavelength_um: f64) -> Result<f64> {
        self.gvd_with_step(wavelength_um, GVD_RELATIVE_STEP)
    }

    /// [`Material::gvd`] with an explicit relative frequency step.
    ///
    /// Only the dispersive part (n − 1)·ω/c is differenced; the vacuum term
    /// ω/c is linear and drops out exactly.
    pub fn gvd_with_step(&self, wavelength_um: f64, relative_step: f64) -> Result<f64> {
        if !(relative_step > 0.0 && relative_step < 0.1) {
            return Err(Error::input(format!(
                "finite-difference step {relative_step} must lie in (0, 0.1)"
            )));
        }
        self.check_range(wavelength_um)?;
        let omega = angular_frequency(wavelength_um);
        let h = omega * relative_step;
        let excess = |w: f64| -> Result<f64> {
            let lambda = wavelength_um_checked(self, w)?;
            let n = (1.0 + self.n_squared_minus_one(lambda)).sqrt();
            Ok((n - 1.0) * w)
        };
        let d2 = excess(omega + h)? - 2.0 * excess(omega)? + excess(omega - h)?;
        Ok(d2 / (SPEED_OF_LIGHT_MM_PER_FS * h * h))
    }
}

fn wavelength_um_checked(material: &Material, omega: f64) -> Result<f64> {
    let lambda = wavelength_um(omega);
    material.check_range(lambda)?;
    Ok(lambda)
}

/// n(λ) for a material.
pub fn refractive_index(material: &Material, wavelength_um: f64) -> Result<f64> {
    material.refractive_index(wavelength_um)
}

/// k″(λ) in fs²/mm.
pub fn gvd(material: &Material, wavelength_um: f64) -> Result<f64> {
    material.gvd(wavelength_um)
}

/// A lookup table of materials.
#[derive(Debug, Clone)]
pub struct MaterialCatalog {
    materials: Vec<Material>,
}

fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '-' && *c != '_' && !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect()
}

impl MaterialCatalog {
    /// Parses a catalog in the `materials.toml` layout.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: MaterialFile =
            toml::from_str(text).map_err(|e| Error::config(format!("material table: {e}")))?;
        if file.format_version != 1 {
            return Err(Error::config(format!(
                "material table format {} is not supported",
                file.format_version
            )));
        }
        let mut materials = Vec::with_capacity(file.material.len());
        for r in file.material {
            if !(r.lambda_min_um > 0.0 && r.lambda_max_um > r.lambda_min_um) {
                return Err(Error::config(format!(
                    "material {} has an empty validity range",
                    r.name
                )));
            }
            let m = Material {
                name: r.name,
                sellmeier_b: [r.b1, r.b2, r.b3],
                sellmeier_c: [r.c1, r.c2, r.c3],
                valid_range: (r.lambda_min_um, r.lambda_max_um),
            };
            if materials
                .iter()
                .any(|o: &Material| normalize_name(&o.name) == normalize_name(&m.name))
            {
                return Err(Error::config(format!("material {} listed twice", m.name)));
            }
            materials.push(m);
        }
        Ok(MaterialCatalog { materials })
    }

    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static MaterialCatalog {
        static CATALOG: OnceLock<MaterialCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            MaterialCatalog::from_toml_str(MATERIALS_TOML).expect("shipped material table parses")
        })
    }

    /// Case-insensitive lookup; `SF-57`, `sf57` and `SF57` are the same glass.
    pub fn get(&self, name: &str) -> Result<&Material> {
        let key = normalize_name(name);
        self.materials
            .iter()
            .find(|m| normalize_name(&m.name) == key)
            .ok_or_else(|| Error::UnknownMaterial {
                name: name.to_string(),
                known: self.names(),
            })
    }

    pub fn names(&self) -> Vec<String> {
        self.materials.iter().map(|m| m.name.clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Material> {
        self.materials.iter()
    }
}

/// Looks `name` up in the built-in catalog.
pub fn material(name: &str) -> Result<&'static Material> {
    MaterialCatalog::builtin().get(name)
}
