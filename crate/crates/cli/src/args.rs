use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "su11", version, about = "Mode-selective SU(1,1) interferometer model")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON configuration file; quantities carry units, e.g. "200um".
    #[arg(long, global = true, conflicts_with = "preset")]
    pub config: Option<PathBuf>,

    /// Built-in configuration: paper-angular, paper-spectral or separable.
    #[arg(long, global = true)]
    pub preset: Option<String>,

    /// Data file to write. A `<out>.manifest.json` is written next to it.
    /// Without it the data goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Refractive index and GVD of a material.
    Material {
        name: String,
        #[arg(long)]
        wavelength: String,
    },

    /// Angular width against crystal separation L (spatial arm).
    AngularSweep {
        #[arg(long, requires_all = ["to", "step"])]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        #[arg(long, requires = "from")]
        step: Option<String>,
        /// Individual separations; may be repeated and combined with a range.
        #[arg(long)]
        at: Vec<String>,
        /// Floor the width at the far-field width of the fundamental mode.
        #[arg(long)]
        saturate: bool,
    },

    /// Spectral width against k″d of dispersive media (temporal arm).
    SpectralSweep {
        /// Medium and length, e.g. SF6:9cm; may be repeated.
        #[arg(long)]
        medium: Vec<String>,
        /// Override the zero-dispersion spectral FWHM, e.g. 45.6nm.
        #[arg(long)]
        baseline: Option<String>,
    },

    /// Mode profiles before and after the gap, with the pump envelope.
    Modes {
        #[arg(long, value_delimiter = ',', default_value = "0,10,50")]
        orders: Vec<usize>,
        /// Gap between the crystals: none, free:60mm or SF6:10cm. Defaults to the configured gap.
        #[arg(long)]
        gap: Option<String>,
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },

    /// Schmidt eigenvalues and gain-renormalised weights.
    Schmidt {
        /// Parametric gain G, overriding the configured value.
        #[arg(long)]
        gain: Option<f64>,
        /// auto, numeric or analytic.
        #[arg(long)]
        method: Option<String>,
        /// Also write the leading mode profiles (x, psi_0, psi_1, ...) here.
        #[arg(long)]
        modes_out: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        mode_count: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Material { .. } => "material",
            Command::AngularSweep { .. } => "angular-sweep",
            Command::SpectralSweep { .. } => "spectral-sweep",
            Command::Modes { .. } => "modes",
            Command::Schmidt { .. } => "schmidt",
        }
    }

    pub fn default_preset(&self) -> &'static str {
        match self {
            Command::AngularSweep { .. } => "paper-angular",
            _ => "paper-spectral",
        }
    }
}
