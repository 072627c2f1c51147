use thiserror::Error;

/// Errors raised by the simulator.
///
/// The variants split along the line the command-line front end cares
/// about: everything except [`Error::Numerical`] is a problem with what the
/// caller asked for.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("wavelength {wavelength_um} µm is outside the valid range of {material} ({min_um}–{max_um} µm)")]
    OutOfRange {
        material: String,
        wavelength_um: f64,
        min_um: f64,
        max_um: f64,
    },

    #[error("unknown material `{name}`; known materials: {}", known.join(", "))]
    UnknownMaterial { name: String, known: Vec<String> },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
