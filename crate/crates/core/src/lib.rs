//! Schmidt-mode model of a two-crystal SU(1,1) interferometer.
//!
//! The crate goes from material dispersion ([`materials`]) through the
//! two-photon amplitude and its Schmidt decomposition ([`schmidt`]) to mode
//! spreading between the crystals ([`propagation`]) and the observable
//! angular and spectral widths ([`interferometer`]).

pub mod error;
pub mod interferometer;
pub mod materials;
pub mod propagation;
pub mod schmidt;
pub mod units;

pub use error::{Error, Result};
