use crate::error::{Error, Result};
use crate::units::{C, C_CGS, EPSILON_0, HBAR, HBAR_CGS, STATC_CM_PER_C_M};
use std::f64::consts::PI;

/// Two-level node coupled to a single cavity mode. All fields SI.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeCoupling {
    /// Transition dipole moment, C·m.
    pub dipole: f64,
    /// Mode volume, m³.
    pub volume: f64,
    /// Transition wavelength, m.
    pub wavelength: f64,
}

impl NodeCoupling {
    pub fn new(dipole: f64, volume: f64, wavelength: f64) -> Result<Self> {
        for (name, v) in [("dipole moment", dipole), ("mode volume", volume), ("wavelength", wavelength)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(Self {
            dipole,
            volume,
            wavelength,
        })
    }

    /// Mode volume `(λ/n)³`.
    pub fn with_cubic_volume(dipole: f64, wavelength: f64, n: f64) -> Result<Self> {
        Self::new(dipole, (wavelength / n).powi(3), wavelength)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitSystem {
    /// `Ω₀ = d √(8π² c / (ħ V λ))` in Gaussian units.
    Cgs,
    /// The same quantity written with SI constants, `d √(2π c / (ε₀ ħ V λ))`.
    Si,
}

/// Vacuum Rabi frequency Ω₀ in rad/s. Both unit systems describe the same
/// physical quantity and agree to rounding.
pub fn vacuum_rabi_frequency(coupling: &NodeCoupling, units: UnitSystem) -> f64 {
    match units {
        UnitSystem::Cgs => {
            let d = coupling.dipole * STATC_CM_PER_C_M;
            let v = coupling.volume * 1e6;
            let lambda = coupling.wavelength * 1e2;
            d * (8.0 * PI * PI * C_CGS / (HBAR_CGS * v * lambda)).sqrt()
        }
        UnitSystem::Si => {
            coupling.dipole
                * (2.0 * PI * C / (EPSILON_0 * HBAR * coupling.volume * coupling.wavelength)).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> NodeCoupling {
        NodeCoupling::with_cubic_volume(1e-28, 1.24e-6, 2.2).unwrap()
    }

    #[test]
    fn unit_systems_agree() {
        let c = reference();
        let cgs = vacuum_rabi_frequency(&c, UnitSystem::Cgs);
        let si = vacuum_rabi_frequency(&c, UnitSystem::Si);
        assert!((cgs - si).abs() <= 1e-9 * cgs, "{cgs:e} vs {si:e}");
    }

    #[test]
    fn scaling_laws() {
        let base = reference();
        let w = vacuum_rabi_frequency(&base, UnitSystem::Cgs);
        let d2 = NodeCoupling { dipole: 2.0 * base.dipole, ..base };
        assert!((vacuum_rabi_frequency(&d2, UnitSystem::Cgs) / w - 2.0).abs() < 1e-14);
        let v4 = NodeCoupling { volume: 4.0 * base.volume, ..base };
        assert!((vacuum_rabi_frequency(&v4, UnitSystem::Cgs) / w - 0.5).abs() < 1e-14);
        let l4 = NodeCoupling { wavelength: 4.0 * base.wavelength, ..base };
        assert!((vacuum_rabi_frequency(&l4, UnitSystem::Cgs) / w - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_positive_inputs() {
        assert!(NodeCoupling::new(0.0, 1.0, 1.0).is_err());
        assert!(NodeCoupling::new(1.0, -1.0, 1.0).is_err());
        assert!(NodeCoupling::new(1.0, 1.0, f64::NAN).is_err());
    }
}
