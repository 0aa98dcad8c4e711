//! Simulation toolkit for optically switched photonic channels between
//! cavity-coupled two-level quantum nodes.
//!
//! * [`modes`]: eigenmodes of the isolated and common cavities and the mode
//!   populations of a released photon.
//! * [`propagation`]: dispersive evolution in the common cavity and the
//!   round-trip transfer fidelity.
//! * [`device`]: vacuum Rabi frequency, Kerr index shift and Bragg stack
//!   reflectivity.
//! * [`gates`]: exchange / inversion operators and the SWAP and CNOT
//!   protocols built from them.
//! * [`acceptance`]: the numerical checks behind `optoswitch verify`.

pub mod acceptance;
pub mod cli;
pub mod device;
pub mod error;
pub mod gates;
pub mod io;
pub mod modes;
pub mod propagation;
pub mod quadrature;
pub mod units;

pub use error::{Error, Result};
