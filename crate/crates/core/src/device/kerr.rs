use crate::error::{Error, Result};
use std::str::FromStr;

/// Medium with an intensity-dependent index `n = n0 + n2 I`.
///
/// `n2` is kept in cm²/W, the unit material tables quote, so that the
/// shift at an intensity given in W/cm² is a single multiplication.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KerrMedium {
    n2_cm2_per_w: f64,
    pub n0: f64,
}

impl KerrMedium {
    /// `n2` given in cm²/W.
    pub fn from_cgs(n2_cm2_per_w: f64, n0: f64) -> Result<Self> {
        if !(n2_cm2_per_w >= 0.0) {
            return Err(Error::domain(format!("Kerr coefficient must be >= 0, got {n2_cm2_per_w}")));
        }
        Ok(Self { n2_cm2_per_w, n0 })
    }

    /// `n2` given in m²/W.
    pub fn from_si(n2_m2_per_w: f64, n0: f64) -> Result<Self> {
        Self::from_cgs(n2_m2_per_w * 1e4, n0)
    }

    pub fn n2_cm2_per_w(&self) -> f64 {
        self.n2_cm2_per_w
    }

    /// m²/W.
    pub fn n2(&self) -> f64 {
        self.n2_cm2_per_w * 1e-4
    }
}

/// Named material presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Material {
    LithiumNiobate,
}

impl Material {
    pub fn index(self) -> f64 {
        match self {
            Material::LithiumNiobate => 2.2,
        }
    }

    pub fn kerr(self) -> KerrMedium {
        match self {
            Material::LithiumNiobate => KerrMedium {
                n2_cm2_per_w: 83.3e-16,
                n0: self.index(),
            },
        }
    }
}

impl FromStr for Material {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linbo3" | "lithium-niobate" | "lithium_niobate" => Ok(Material::LithiumNiobate),
            _ => Err(Error::parse("material", s, "known presets: linbo3")),
        }
    }
}

/// `Δn = n2 · I` with `intensity` in W/cm².
pub fn kerr_index_shift(medium: &KerrMedium, intensity_w_per_cm2: f64) -> Result<f64> {
    if !(intensity_w_per_cm2 >= 0.0) {
        return Err(Error::domain(format!("intensity must be >= 0, got {intensity_w_per_cm2}")));
    }
    Ok(medium.n2_cm2_per_w() * intensity_w_per_cm2)
}
