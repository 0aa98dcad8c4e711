//! Feasibility calculators for the switchable node channel: node-cavity
//! coupling strength, Kerr index shift, and Bragg mirror reflectivity.

mod grating;
mod kerr;
mod rabi;

pub use grating::{
    band_center_reflectivity, quarter_wave_reflectivity, reflectance_at, reflectivity_spectrum, stopband_width, Ambient,
    GratingSpec, ReflectivitySpectrum, WavelengthRange, DEFAULT_BAND_THRESHOLD,
};
pub use kerr::{kerr_index_shift, KerrMedium, Material};
pub use rabi::{vacuum_rabi_frequency, NodeCoupling, UnitSystem};
