//! Unit-suffixed physical quantities.
//!
//! Every quantity that crosses a file or command-line boundary carries its
//! unit, e.g. `"709.3nm"`, `"19.4 cm"`, `"6ps"`. Bare numbers are rejected.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Speed of light in nm/fs (equivalently µm/ps).
pub const SPEED_OF_LIGHT_NM_PER_FS: f64 = 299.792_458;

/// A length, stored in micrometres.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Length(f64);

impl Length {
    pub fn from_um(um: f64) -> Self {
        Length(um)
    }
    pub fn from_nm(nm: f64) -> Self {
        Length(nm * 1e-3)
    }
    pub fn from_mm(mm: f64) -> Self {
        Length(mm * 1e3)
    }
    pub fn from_cm(cm: f64) -> Self {
        Length(cm * 1e4)
    }
    pub fn um(self) -> f64 {
        self.0
    }
    pub fn nm(self) -> f64 {
        self.0 * 1e3
    }
    pub fn mm(self) -> f64 {
        self.0 * 1e-3
    }
}

/// A duration, stored in femtoseconds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Time(f64);

impl Time {
    pub fn from_fs(fs: f64) -> Self {
        Time(fs)
    }
    pub fn from_ps(ps: f64) -> Self {
        Time(ps * 1e3)
    }
    pub fn fs(self) -> f64 {
        self.0
    }
    pub fn ps(self) -> f64 {
        self.0 * 1e-3
    }
}

/// Either kind of quantity the config and CLI accept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Length(Length),
    Time(Time),
}

fn split_number(s: &str) -> Result<(f64, &str)> {
    let s = s.trim();
    let end = s
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit()
                || c == '.'
                || c == '+'
                || c == '-'
                || ((c == 'e' || c == 'E')
                    && s[i + 1..].starts_with(|n: char| n.is_ascii_digit() || n == '-' || n == '+')))
        })
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    let (num, unit) = s.split_at(end);
    let unit = unit.trim();
    if unit.is_empty() {
        return Err(Error::input(format!(
            "`{s}` has no unit; write e.g. `710nm`, `10cm` or `6ps`"
        )));
    }
    let value: f64 = num
        .parse()
        .map_err(|_| Error::input(format!("`{s}` does not start with a number")))?;
    if !value.is_finite() {
        return Err(Error::input(format!("`{s}` is not finite")));
    }
    Ok((value, unit))
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (v, unit) = split_number(s)?;
        let q = match unit {
            "nm" => Quantity::Length(Length::from_nm(v)),
            "um" | "µm" | "μm" => Quantity::Length(Length::from_um(v)),
            "mm" => Quantity::Length(Length::from_mm(v)),
            "cm" => Quantity::Length(Length::from_cm(v)),
            "m" => Quantity::Length(Length::from_um(v * 1e6)),
            "fs" => Quantity::Time(Time::from_fs(v)),
            "ps" => Quantity::Time(Time::from_ps(v)),
            "ns" => Quantity::Time(Time::from_fs(v * 1e6)),
            other => {
                return Err(Error::input(format!(
                    "unknown unit `{other}` in `{}`",
                    s.trim()
                )))
            }
        };
        Ok(q)
    }
}

impl FromStr for Length {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Quantity>()? {
            Quantity::Length(l) => Ok(l),
            Quantity::Time(_) => Err(Error::input(format!("`{s}` is a time, expected a length"))),
        }
    }
}

impl FromStr for Time {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Quantity>()? {
            Quantity::Time(t) => Ok(t),
            Quantity::Length(_) => Err(Error::input(format!("`{s}` is a length, expected a time"))),
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}um", self.0)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}fs", self.0)
    }
}
