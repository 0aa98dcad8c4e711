//! Physical constants and unit-suffixed quantity parsing.
//!
//! Everything is stored in SI internally. Text inputs carry an explicit unit
//! suffix glued to the number, e.g. `1.24um`, `10ps_nm_km`, `1e11W_cm2`.

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Speed of light in cm/s.
pub const C_CGS: f64 = C * 1e2;
/// Reduced Planck constant in erg·s.
pub const HBAR_CGS: f64 = HBAR * 1e7;
/// statC·cm per C·m.
pub const STATC_CM_PER_C_M: f64 = 2.997_924_58e11;

/// 1 ps/(nm·km) expressed in s/m².
pub const PS_PER_NM_KM: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Time,
    Volume,
    Dispersion,
    Intensity,
    KerrCoefficient,
    DipoleMoment,
}

impl Dimension {
    fn name(self) -> &'static str {
        match self {
            Dimension::Length => "length",
            Dimension::Time => "time",
            Dimension::Volume => "volume",
            Dimension::Dispersion => "dispersion",
            Dimension::Intensity => "intensity",
            Dimension::KerrCoefficient => "Kerr coefficient",
            Dimension::DipoleMoment => "dipole moment",
        }
    }

    /// Accepted suffixes and their factor to SI.
    fn suffixes(self) -> &'static [(&'static str, f64)] {
        match self {
            Dimension::Length => &[
                ("m", 1.0),
                ("cm", 1e-2),
                ("mm", 1e-3),
                ("um", 1e-6),
                ("µm", 1e-6),
                ("nm", 1e-9),
            ],
            Dimension::Time => &[
                ("s", 1.0),
                ("ns", 1e-9),
                ("ps", 1e-12),
                ("fs", 1e-15),
            ],
            Dimension::Volume => &[("m3", 1.0), ("cm3", 1e-6), ("um3", 1e-18)],
            Dimension::Dispersion => &[("ps_nm_km", PS_PER_NM_KM), ("s_m2", 1.0)],
            Dimension::Intensity => &[("W_cm2", 1e4), ("W_m2", 1.0)],
            Dimension::KerrCoefficient => &[("cm2_W", 1e-4), ("m2_W", 1.0)],
            Dimension::DipoleMoment => &[("C_m", 1.0), ("Cm", 1.0)],
        }
    }
}

/// Splits `"1.24um"` into `("1.24", "um")`. An `e`/`E` is treated as an
/// exponent marker only when followed by a digit or sign.
fn split_number(input: &str) -> (&str, &str) {
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let is_exp = (b == b'e' || b == b'E')
            && i > 0
            && bytes
                .get(i + 1)
                .is_some_and(|n| n.is_ascii_digit() || *n == b'-' || *n == b'+');
        if b.is_ascii_digit() || b == b'.' || b == b'-' || b == b'+' || is_exp {
            i += if is_exp { 2 } else { 1 };
        } else {
            break;
        }
    }
    input.split_at(i)
}

/// Parses a suffixed quantity into SI. Bare numbers are rejected.
pub fn parse_quantity(input: &str, dim: Dimension) -> Result<f64> {
    parse_inner(input.trim(), dim, None)
}

/// Like [`parse_quantity`] but a bare number is read in `default_unit`.
pub fn parse_quantity_or(input: &str, dim: Dimension, default_unit: &str) -> Result<f64> {
    parse_inner(input.trim(), dim, Some(default_unit))
}

fn parse_inner(input: &str, dim: Dimension, default_unit: Option<&str>) -> Result<f64> {
    let (num, suffix) = split_number(input);
    let value: f64 = num
        .parse()
        .map_err(|_| Error::parse(dim.name(), input, "missing or malformed number"))?;
    let suffix = match (suffix, default_unit) {
        ("", Some(unit)) => unit,
        ("", None) => {
            return Err(Error::parse(
                dim.name(),
                input,
                "unit suffix required (physical values may not be unitless)",
            ))
        }
        (s, _) => s,
    };
    let factor = dim
        .suffixes()
        .iter()
        .find(|(s, _)| *s == suffix)
        .map(|(_, f)| *f)
        .ok_or_else(|| {
            let allowed: Vec<_> = dim.suffixes().iter().map(|(s, _)| *s).collect();
            Error::parse(
                dim.name(),
                input,
                format!("unknown unit {suffix:?}, expected one of {allowed:?}"),
            )
        })?;
    if !value.is_finite() {
        return Err(Error::parse(dim.name(), input, "value is not finite"));
    }
    Ok(value * factor)
}
