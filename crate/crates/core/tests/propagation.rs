//! Field evolution in the common cavity.

use num_complex::Complex64;
use optoswitch::modes::{eigenmode, population_spectrum, CavityGeometry, ModeSpectrum, Truncation};
use optoswitch::propagation::{
    field_snapshot_at_transits, roundtrip_fidelity, DispersionParams, FidelityMethod, ReproductionDefaults,
};
use proptest::prelude::*;

fn spectrum(s0: u32) -> ModeSpectrum {
    let g = ReproductionDefaults::default().geometry(s0).unwrap();
    population_spectrum(&g, Truncation::auto()).unwrap()
}

fn initial_field(g: &CavityGeometry, z: f64) -> Complex64 {
    if z <= g.l0() {
        eigenmode(g.s0(), g.l0(), z).unwrap().into()
    } else {
        Complex64::default()
    }
}

#[test]
fn half_time_field_is_the_mirror_image() {
    for s0 in [1, 10] {
        let spec = spectrum(s0);
        let g = *spec.geometry();
        let params = DispersionParams::new(0.0, g);
        let field = field_snapshot_at_transits(&params, &spec, 1.0, 2 * spec.s_max() + 1).unwrap();
        let mirrored: Vec<Complex64> = field.z.iter().map(|&z| initial_field(&g, g.l() - z)).collect();
        let ov = field.normalized_overlap(&mirrored);
        assert!(ov > 1.0 - 1e-6, "s0={s0}: {ov}");
    }
}

#[test]
fn moderate_dispersion_nearly_restores_the_packet() {
    let spec = spectrum(10);
    let g = *spec.geometry();
    let params = DispersionParams::new(10.0, g);
    let field = field_snapshot_at_transits(&params, &spec, 2.0, 2 * spec.s_max() + 1).unwrap();
    let start: Vec<Complex64> = field.z.iter().map(|&z| initial_field(&g, z)).collect();
    let ov = field.normalized_overlap(&start);
    // F is the real part of the same overlap, so it bounds the modulus from below.
    let f = roundtrip_fidelity(&params, &spec, FidelityMethod::Spectral).unwrap();
    assert!(ov > 0.98 && ov < 1.0 - 1e-4, "{ov}");
    assert!(ov >= f - 1e-6, "{ov} vs F = {f}");
    // Likewise for the energy returned to the isolated cavity.
    let inside = field.energy_between(0.0, g.l0()) / field.energy();
    assert!(inside >= f * f - 1e-6 && inside < 1.0, "{inside} vs F = {f}");
}

#[test]
fn snapshot_time_is_reported_in_seconds() {
    let spec = spectrum(1);
    let params = DispersionParams::new(0.0, *spec.geometry());
    let field = field_snapshot_at_transits(&params, &spec, 2.0, 2 * spec.s_max() + 1).unwrap();
    assert!((field.t - params.round_trip_time()).abs() <= 1e-15 * field.t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fidelity_is_even_and_bounded(d in 0.0f64..40.0, s0 in 1u32..=3, ratio in prop::sample::select(vec![20.0, 50.0, 200.0])) {
        let defaults = ReproductionDefaults { ratio, ..ReproductionDefaults::default() };
        let g = defaults.geometry(s0).unwrap();
        let spec = population_spectrum(&g, Truncation::auto()).unwrap();
        let plus = roundtrip_fidelity(&DispersionParams::new(d, g), &spec, FidelityMethod::Spectral).unwrap();
        let minus = roundtrip_fidelity(&DispersionParams::new(-d, g), &spec, FidelityMethod::Spectral).unwrap();
        prop_assert!((plus - minus).abs() <= 1e-12);
        prop_assert!(plus <= 1.0 && plus > -1.0);
    }

    #[test]
    fn snapshot_energy_is_conserved(tau in 0.0f64..4.0, d in 0.0f64..30.0) {
        let defaults = ReproductionDefaults { ratio: 20.0, ..ReproductionDefaults::default() };
        let g = defaults.geometry(2).unwrap();
        let spec = population_spectrum(&g, Truncation::auto()).unwrap();
        let field = field_snapshot_at_transits(&DispersionParams::new(d, g), &spec, tau, 4 * spec.s_max() + 1).unwrap();
        // Trapezoid on a band-limited sine series is exact up to aliasing.
        prop_assert!((field.energy() - spec.total_population()).abs() <= 1e-9, "{}", field.energy());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn spectral_and_grid_fidelity_agree(d in 0.0f64..30.0) {
        let spec = spectrum(1);
        let params = DispersionParams::new(d, *spec.geometry());
        let a = roundtrip_fidelity(&params, &spec, FidelityMethod::Spectral).unwrap();
        let b = roundtrip_fidelity(&params, &spec, FidelityMethod::Grid).unwrap();
        prop_assert!((a - b).abs() <= 1e-6, "D={}: {} vs {}", d, a, b);
    }
}
