//! Bragg mirror, Kerr switch and node coupling.

use optoswitch::device::{
    band_center_reflectivity, kerr_index_shift, quarter_wave_reflectivity, reflectance_at, reflectivity_spectrum,
    stopband_width, vacuum_rabi_frequency, Ambient, GratingSpec, Material, NodeCoupling, UnitSystem,
    WavelengthRange,
};
use optoswitch::Error;
use proptest::prelude::*;

const LAMBDA: f64 = 1.24e-6;
const N: f64 = 2.2;

#[test]
fn weak_grating_band_is_about_half_a_nanometre() {
    let g = GratingSpec::quarter_wave_centered(N, 1e-3, LAMBDA, 3000).unwrap();
    let spec = reflectivity_spectrum(&g, &WavelengthRange::centered(LAMBDA, 2e-9, 801).unwrap(), Ambient::uniform(N))
        .unwrap();
    let peak = spec.reflectance.iter().cloned().fold(0.0, f64::max);
    assert!(peak > 0.7 && peak < 0.8, "{peak}");
    // Peak reflectivity stays below 0.99, so the band is measured at half maximum.
    assert!(matches!(stopband_width(&spec, 0.99), Err(Error::NoBand { .. })));
    let fwhm = stopband_width(&spec, peak / 2.0).unwrap();
    assert!(fwhm > 0.5e-9 / 3.0 && fwhm < 0.5e-9 * 3.0, "{fwhm:e}");
}

#[test]
fn kerr_shift_erases_the_grating() {
    let dn = kerr_index_shift(&Material::LithiumNiobate.kerr(), 1e11).unwrap();
    let g = GratingSpec::quarter_wave_centered(N, dn, LAMBDA, 3000).unwrap();
    let erased = g.with_high_index(g.n_high - dn);
    let amb = Ambient::uniform(N);
    assert!(band_center_reflectivity(&g, amb).0 > 0.5);
    assert!(band_center_reflectivity(&erased, amb).0 < 1e-3);
}

#[test]
fn rabi_unit_systems_agree() {
    let c = NodeCoupling::with_cubic_volume(1e-28, LAMBDA, N).unwrap();
    let (a, b) = (vacuum_rabi_frequency(&c, UnitSystem::Cgs), vacuum_rabi_frequency(&c, UnitSystem::Si));
    assert!((a - b).abs() <= 1e-9 * a);
}

proptest! {
    #[test]
    fn transfer_matrix_matches_closed_form(
        n_low in 1.3f64..3.0,
        contrast in 1e-4f64..0.5,
        periods in 1usize..400,
        n_sub in 1.0f64..3.5,
    ) {
        let g = GratingSpec::quarter_wave(n_low + contrast, n_low, LAMBDA, periods).unwrap();
        let amb = Ambient { incident: n_low, substrate: n_sub };
        let (r, t) = band_center_reflectivity(&g, amb);
        prop_assert!((r - quarter_wave_reflectivity(g.n_high, g.n_low, periods, amb)).abs() <= 1e-9);
        prop_assert!((r + t - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn lossless_at_every_wavelength(lambda in 1.0e-6f64..1.6e-6, periods in 1usize..3000) {
        let g = GratingSpec::quarter_wave_centered(N, 1e-3, LAMBDA, periods).unwrap();
        let (r, t) = reflectance_at(&g, lambda, Ambient::uniform(N));
        prop_assert!((r + t - 1.0).abs() <= 1e-12 && r >= 0.0 && t >= 0.0);
    }

    #[test]
    fn more_periods_transmit_less(a in 1usize..5000, b in 1usize..5000) {
        prop_assume!(a != b);
        let t = |n| {
            let g = GratingSpec::quarter_wave_centered(N, 1e-3, LAMBDA, n).unwrap();
            band_center_reflectivity(&g, Ambient::uniform(N)).1
        };
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(t(hi) < t(lo));
    }

    #[test]
    fn kerr_shift_is_linear(i in 0.0f64..1e12, k in 0.0f64..10.0) {
        let m = Material::LithiumNiobate.kerr();
        let a = kerr_index_shift(&m, i).unwrap();
        let b = kerr_index_shift(&m, k * i).unwrap();
        prop_assert!((b - k * a).abs() <= 1e-12 * b.abs().max(1e-30));
    }
}
