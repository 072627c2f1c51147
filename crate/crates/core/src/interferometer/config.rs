use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{self, Material};
use crate::schmidt::SchmidtMethod;
use crate::units::{Length, Time};

/// Which degree of freedom the interferometer is resolved in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arm {
    /// Transverse wavevector; observable is the angular width.
    Spatial,
    /// Frequency detuning; observable is the spectral width.
    Temporal,
}

/// The space between the two crystals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gap {
    FreeSpace { length_mm: f64 },
    Dispersive { material: String, length_mm: f64 },
}

impl Gap {
    pub fn length_mm(&self) -> f64 {
        match self {
            Gap::FreeSpace { length_mm } | Gap::Dispersive { length_mm, .. } => *length_mm,
        }
    }

    /// k″·d in fs² at `wavelength_um`; zero for free space.
    pub fn k2d(&self, wavelength_um: f64) -> Result<f64> {
        match self {
            Gap::FreeSpace { .. } => Ok(0.0),
            Gap::Dispersive { material, length_mm } => {
                Ok(materials::material(material)?.gvd(wavelength_um)? * length_mm)
            }
        }
    }

    /// Parses `none`, `free:60mm` or `<material>:<length>` such as `SF6:10cm`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("none") {
            return Ok(Gap::Dispersive { material: "vacuum".into(), length_mm: 0.0 });
        }
        let (head, len) = text.split_once(':').ok_or_else(|| {
            Error::input(format!("gap `{text}` must look like `SF6:10cm`, `free:60mm` or `none`"))
        })?;
        let length_mm = Length::from_str(len)?.mm();
        if head.eq_ignore_ascii_case("free") {
            Ok(Gap::FreeSpace { length_mm })
        } else {
            let m = materials::material(head)?;
            Ok(Gap::Dispersive { material: m.name.clone(), length_mm })
        }
    }
}

/// How strongly a mode that outgrows the pump is still amplified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Rolloff {
    /// Every mode is amplified fully.
    None,
    /// Modes larger than the pump are not amplified at all.
    Hard,
    /// (pump half-size / mode size)² beyond the pump.
    Quadratic,
    /// sinh²(f·√λ_k·G)/sinh²(√λ_k·G) with f = min(1, pump half-size / mode size):
    /// the mode sees the fraction f of the parametric gain. Once even the
    /// fundamental is wider than the pump, f is taken relative to the
    /// fundamental and every mode additionally loses (half-size / size₀)².
    #[default]
    GainScaled,
}

impl FromStr for Rolloff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Rolloff::None),
            "hard" => Ok(Rolloff::Hard),
            "quadratic" => Ok(Rolloff::Quadratic),
            "gain-scaled" => Ok(Rolloff::GainScaled),
            other => Err(Error::input(format!(
                "unknown roll-off `{other}` (expected none, hard, quadratic or gain-scaled)"
            ))),
        }
    }
}

/// Everything that defines a simulated interferometer.
///
/// Pump sizes are stored as quoted in the lab: intensity FWHM for the beam,
/// coherence time for the pulse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferometerConfig {
    pub arm: Arm,
    /// Pump beam intensity FWHM in µm. Required for the spatial arm.
    pub pump_fwhm_um: Option<f64>,
    /// Pump coherence time in fs. Required for the temporal arm.
    pub pump_coherence_time_fs: Option<f64>,
    pub pump_wavelength_um: Option<f64>,
    pub pdc_wavelength_um: f64,
    pub crystal_material: String,
    pub crystal_length_mm: f64,
    pub gap: Gap,
    pub gain: f64,
    /// Measured spectral FWHM at zero dispersion, in nm.
    pub baseline_fwhm_nm: Option<f64>,
    pub rolloff: Rolloff,
    pub schmidt_method: SchmidtMethod,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::config(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// Rounds away unit-conversion noise such as 709.3000000000001.
fn tidy(v: f64) -> f64 {
    (v * 1e9).round() / 1e9
}

impl InterferometerConfig {
    pub fn validate(&self) -> Result<()> {
        match self.arm {
            Arm::Spatial => positive(
                "pump_fwhm",
                self.pump_fwhm_um
                    .ok_or_else(|| Error::config("the spatial arm needs pump_fwhm"))?,
            )?,
            Arm::Temporal => positive(
                "pump_coherence_time",
                self.pump_coherence_time_fs
                    .ok_or_else(|| Error::config("the temporal arm needs pump_coherence_time"))?,
            )?,
        }
        if let Some(v) = self.pump_fwhm_um {
            positive("pump_fwhm", v)?;
        }
        if let Some(v) = self.pump_coherence_time_fs {
            positive("pump_coherence_time", v)?;
        }
        if let Some(v) = self.pump_wavelength_um {
            positive("pump_wavelength", v)?;
        }
        if let Some(v) = self.baseline_fwhm_nm {
            positive("baseline_fwhm", v)?;
        }
        positive("pdc_wavelength", self.pdc_wavelength_um)?;
        positive("crystal_length", self.crystal_length_mm)?;
        let gap_len = self.gap.length_mm();
        if !(gap_len >= 0.0 && gap_len.is_finite()) {
            return Err(Error::config(format!("gap length must be non-negative, got {gap_len} mm")));
        }
        if !(self.gain >= 0.0 && self.gain.is_finite()) {
            return Err(Error::config(format!("gain must be non-negative, got {}", self.gain)));
        }
        self.crystal()?.refractive_index(self.pdc_wavelength_um)?;
        if let Gap::Dispersive { material, .. } = &self.gap {
            materials::material(material)?.gvd(self.pdc_wavelength_um)?;
        }
        Ok(())
    }

    pub fn crystal(&self) -> Result<&'static Material> {
        materials::material(&self.crystal_material)
    }

    pub fn with_gap(&self, gap: Gap) -> Self {
        InterferometerConfig { gap, ..self.clone() }
    }

    /// Flat key/value form with unit-suffixed strings.
    pub fn to_file(&self) -> ConfigFile {
        let fmt_len = |um: f64| -> String {
            if um >= 1000.0 { format!("{}mm", tidy(um / 1e3)) } else { format!("{}um", tidy(um)) }
        };
        let (gap_kind, gap_material) = match &self.gap {
            Gap::FreeSpace { .. } => ("free_space".to_string(), None),
            Gap::Dispersive { material, .. } => ("dispersive".to_string(), Some(material.clone())),
        };
        ConfigFile {
            arm: match self.arm {
                Arm::Spatial => "spatial".into(),
                Arm::Temporal => "temporal".into(),
            },
            pump_fwhm: self.pump_fwhm_um.map(|v| format!("{v}um")),
            pump_coherence_time: self.pump_coherence_time_fs.map(|v| format!("{}ps", v / 1e3)),
            pump_wavelength: self.pump_wavelength_um.map(|v| format!("{}nm", tidy(v * 1e3))),
            pdc_wavelength: Some(format!("{}nm", tidy(self.pdc_wavelength_um * 1e3))),
            crystal_material: Some(self.crystal_material.clone()),
            crystal_length: Some(fmt_len(self.crystal_length_mm * 1e3)),
            gap_kind: Some(gap_kind),
            gap_material,
            gap_length: Some(format!("{}mm", tidy(self.gap.length_mm()))),
            gain: Some(self.gain),
            baseline_fwhm: self.baseline_fwhm_nm.map(|v| format!("{}nm", tidy(v))),
            rolloff: Some(
                match self.rolloff {
                    Rolloff::None => "none",
                    Rolloff::Hard => "hard",
                    Rolloff::Quadratic => "quadratic",
                    Rolloff::GainScaled => "gain-scaled",
                }
                .into(),
            ),
            schmidt_method: Some(
                match self.schmidt_method {
                    SchmidtMethod::Auto => "auto",
                    SchmidtMethod::Numeric => "numeric",
                    SchmidtMethod::Analytic => "analytic",
                }
                .into(),
            ),
            extra: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("config serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::config(format!("config file: {e}")))?;
        file.resolve()
    }
}

/// On-disk configuration: a flat JSON object whose physical quantities are
/// strings with units, e.g. `"pump_fwhm": "200um"`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConfigFile {
    pub arm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump_fwhm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump_coherence_time: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump_wavelength: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pdc_wavelength: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crystal_material: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crystal_length: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_material: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_length: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gain: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_fwhm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rolloff: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schmidt_method: Option<String>,
    /// Unknown keys are collected so they can be reported, not silently dropped.
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

fn length(key: &str, v: &Option<String>) -> Result<Option<f64>> {
    v.as_deref()
        .map(|s| Length::from_str(s).map(|l| l.um()).map_err(|e| Error::config(format!("{key}: {e}"))))
        .transpose()
}

fn time(key: &str, v: &Option<String>) -> Result<Option<f64>> {
    v.as_deref()
        .map(|s| Time::from_str(s).map(|t| t.fs()).map_err(|e| Error::config(format!("{key}: {e}"))))
        .transpose()
}

impl ConfigFile {
    pub fn resolve(&self) -> Result<InterferometerConfig> {
        if let Some(key) = self.extra.keys().next() {
            return Err(Error::config(format!("unknown config key `{key}`")));
        }
        let arm = match self.arm.as_str() {
            "spatial" => Arm::Spatial,
            "temporal" => Arm::Temporal,
            other => {
                return Err(Error::config(format!("arm must be spatial or temporal, got `{other}`")))
            }
        };
        let pump_wavelength_um = length("pump_wavelength", &self.pump_wavelength)?;
        let pdc_wavelength_um = match (length("pdc_wavelength", &self.pdc_wavelength)?, pump_wavelength_um) {
            (Some(l), _) => l,
            (None, Some(p)) => 2.0 * p,
            (None, None) => return Err(Error::config("pdc_wavelength (or pump_wavelength) is required")),
        };
        let crystal_length_mm = length("crystal_length", &self.crystal_length)?
            .ok_or_else(|| Error::config("crystal_length is required"))?
            * 1e-3;
        let gap_length_mm = length("gap_length", &self.gap_length)?.unwrap_or(0.0) * 1e-3;
        let gap = match self.gap_kind.as_deref().unwrap_or("free_space") {
            "free_space" => {
                if self.gap_material.is_some() {
                    return Err(Error::config("gap_material given for a free_space gap"));
                }
                Gap::FreeSpace { length_mm: gap_length_mm }
            }
            "dispersive" => Gap::Dispersive {
                material: self
                    .gap_material
                    .clone()
                    .ok_or_else(|| Error::config("a dispersive gap needs gap_material"))?,
                length_mm: gap_length_mm,
            },
            other => {
                return Err(Error::config(format!(
                    "gap_kind must be free_space or dispersive, got `{other}`"
                )))
            }
        };
        let config = InterferometerConfig {
            arm,
            pump_fwhm_um: length("pump_fwhm", &self.pump_fwhm)?,
            pump_coherence_time_fs: time("pump_coherence_time", &self.pump_coherence_time)?,
            pump_wavelength_um,
            pdc_wavelength_um,
            crystal_material: self.crystal_material.clone().unwrap_or_else(|| "BBO".into()),
            crystal_length_mm,
            gap,
            gain: self.gain.unwrap_or(0.0),
            baseline_fwhm_nm: length("baseline_fwhm", &self.baseline_fwhm)?.map(|um| um * 1e3),
            rolloff: self.rolloff.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            schmidt_method: self.schmidt_method.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
        };
        config.validate()?;
        Ok(config)
    }
}
