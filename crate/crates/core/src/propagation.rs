//! Dispersive evolution of the released wavepacket in the common cavity and
//! the round-trip transfer fidelity.
//!
//! Field snapshots use the `e^{-iωt}` convention. The fidelity is a real part
//! of a sum with real weights, so it does not depend on that choice.

use crate::error::{Error, Result};
use crate::modes::{self, compensated_sum, CavityGeometry, ModeSpectrum, Truncation};
use crate::quadrature::simpson;
use crate::units::{C, PS_PER_NM_KM};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Transition wavelength assumed for figure reproduction (≈1 eV photons).
pub const DEFAULT_WAVELENGTH: f64 = 1.24e-6;
/// Effective index of lithium niobate.
pub const DEFAULT_INDEX: f64 = 2.2;
/// Common-to-isolated cavity length ratio.
pub const DEFAULT_RATIO: f64 = 200.0;

/// Group-velocity dispersion acting on a cavity geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DispersionParams {
    d_si: f64,
    geometry: CavityGeometry,
}

impl DispersionParams {
    /// `d` in ps/(nm·km).
    pub fn new(d_ps_per_nm_km: f64, geometry: CavityGeometry) -> Self {
        Self::from_si(d_ps_per_nm_km * PS_PER_NM_KM, geometry)
    }

    /// `d` in s/m².
    pub fn from_si(d_si: f64, geometry: CavityGeometry) -> Self {
        Self { d_si, geometry }
    }

    pub fn d_si(&self) -> f64 {
        self.d_si
    }

    pub fn d_ps_per_nm_km(&self) -> f64 {
        self.d_si / PS_PER_NM_KM
    }

    pub fn geometry(&self) -> &CavityGeometry {
        &self.geometry
    }

    /// Time for light to cross the common cavity once, `l n / c`.
    pub fn transit_time(&self) -> f64 {
        self.geometry.l() * self.geometry.n() / C
    }

    /// Node-to-node-and-back time `2 l n / c`.
    pub fn round_trip_time(&self) -> f64 {
        2.0 * self.transit_time()
    }

    /// Dispersive term `c D / n²` (1/m).
    fn dispersion_wavenumber(&self) -> f64 {
        let n = self.geometry.n();
        C * self.d_si / (n * n)
    }

    /// Phase `ω_s t` with `t = transits · l n / c`, reduced modulo 2π on the
    /// dispersion-free part so the result stays accurate for large `s`.
    fn phase(&self, s: usize, transits: f64) -> f64 {
        let s_f = s as f64;
        let linear = PI * (s_f * transits).rem_euclid(2.0);
        let detuning = 1.0 - s_f / self.geometry.resonant_index();
        let quadratic =
            PI * transits * self.geometry.l() * self.dispersion_wavenumber() * detuning * detuning;
        linear + quadratic
    }
}

/// `ω_s = (π c / n) (s / l + (c D / n²)(1 - s / s_r)²)` in rad/s.
pub fn dispersive_frequency(params: &DispersionParams, s: u32) -> f64 {
    let g = params.geometry();
    let detuning = 1.0 - s as f64 / g.resonant_index();
    (PI * C / g.n()) * (s as f64 / g.l() + params.dispersion_wavenumber() * detuning * detuning)
}

/// Complex field sampled on a uniform grid over the common cavity.
#[derive(Clone, Debug)]
pub struct FieldState {
    pub z: Vec<f64>,
    pub values: Vec<Complex64>,
    pub t: f64,
}

impl FieldState {
    pub fn spacing(&self) -> f64 {
        self.z[1] - self.z[0]
    }

    /// `∫ |E|² dz` over the whole grid (trapezoid; the endpoints vanish).
    pub fn energy(&self) -> f64 {
        self.energy_between(f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Trapezoid estimate of `∫ |E|² dz` over grid points in `[lo, hi]`.
    pub fn energy_between(&self, lo: f64, hi: f64) -> f64 {
        let h = self.spacing();
        let pts: Vec<f64> = self
            .z
            .iter()
            .zip(&self.values)
            .filter(|(z, _)| **z >= lo && **z <= hi)
            .map(|(_, v)| v.norm_sqr())
            .collect();
        if pts.len() < 2 {
            return 0.0;
        }
        h * (compensated_sum(pts.iter().copied()) - 0.5 * (pts[0] + pts[pts.len() - 1]))
    }

    /// `|⟨self|other⟩| / (‖self‖ ‖other‖)` with `other` sampled on the same grid.
    pub fn normalized_overlap(&self, other: &[Complex64]) -> f64 {
        assert_eq!(other.len(), self.values.len());
        let dot: Complex64 = self.values.iter().zip(other).map(|(a, b)| a.conj() * b).sum();
        let na: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        let nb: f64 = other.iter().map(|v| v.norm_sqr()).sum();
        dot.norm() / (na * nb).sqrt()
    }
}

fn check_same_geometry(params: &DispersionParams, spectrum: &ModeSpectrum) -> Result<()> {
    if params.geometry() != spectrum.geometry() {
        return Err(Error::domain(
            "spectrum was computed for a different cavity geometry",
        ));
    }
    Ok(())
}

/// Evaluates `Σ_s a_s sqrt(2/l) sin(π s j / M)` for `j = 0..=M` by one FFT of
/// length `2M`. Requires `a.len() < M`.
fn sine_series_on_grid(coeffs: &[Complex64], intervals: usize, length: f64) -> Vec<Complex64> {
    assert!(coeffs.len() < intervals);
    let size = 2 * intervals;
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (k, &a) in coeffs.iter().enumerate() {
        let s = k + 1;
        buf[s] = a;
        buf[size - s] = -a;
    }
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);
    // FFT gives -2i Σ a_s sin(π s j / M).
    let scale = Complex64::new(0.0, 0.5) * (2.0 / length).sqrt();
    let mut out: Vec<Complex64> = buf[..=intervals].iter().map(|x| x * scale).collect();
    out[0] = Complex64::new(0.0, 0.0);
    out[intervals] = Complex64::new(0.0, 0.0);
    out
}

fn evolved_coefficients(params: &DispersionParams, spectrum: &ModeSpectrum, transits: f64) -> Vec<Complex64> {
    spectrum
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, &c)| Complex64::from_polar(c, -params.phase(k + 1, transits)))
        .collect()
}

/// Field `E(z, t) = Σ_s C_s F_s(z, l) e^{-iω_s t}` on `n_z` uniformly spaced
/// points over `[0, l]`.
pub fn field_snapshot(params: &DispersionParams, spectrum: &ModeSpectrum, t: f64, n_z: usize) -> Result<FieldState> {
    field_snapshot_at_transits(params, spectrum, t / params.transit_time(), n_z)
}

/// As [`field_snapshot`], with time given in units of the transit time
/// `l n / c` (so `2.0` is one round trip).
pub fn field_snapshot_at_transits(
    params: &DispersionParams,
    spectrum: &ModeSpectrum,
    transits: f64,
    n_z: usize,
) -> Result<FieldState> {
    check_same_geometry(params, spectrum)?;
    let needed = 2 * spectrum.s_max() + 1;
    if n_z < needed {
        return Err(Error::Undersampled {
            n_z,
            s_max: spectrum.s_max(),
            needed,
        });
    }
    let l = params.geometry().l();
    let intervals = n_z - 1;
    let coeffs = evolved_coefficients(params, spectrum, transits);
    let values = sine_series_on_grid(&coeffs, intervals, l);
    let z = (0..n_z).map(|j| l * j as f64 / intervals as f64).collect();
    Ok(FieldState {
        z,
        values,
        t: transits * params.transit_time(),
    })
}

/// How the round-trip fidelity is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FidelityMethod {
    /// `Re Σ_s C_s² e^{-iω_s t_rt}`.
    Spectral,
    /// Composite Simpson of `Re ∫_0^{l0} E(z, t_rt)* E(z, 0) dz` on a grid with
    /// about `4 s_max` intervals over the common cavity.
    Grid,
}

/// Overlap of the packet after one round trip `t_rt = 2 l n / c` with the
/// initial isolated-cavity mode.
pub fn roundtrip_fidelity(params: &DispersionParams, spectrum: &ModeSpectrum, method: FidelityMethod) -> Result<f64> {
    check_same_geometry(params, spectrum)?;
    Ok(match method {
        FidelityMethod::Spectral => spectral_fidelity(params, spectrum),
        FidelityMethod::Grid => grid_fidelity(params, spectrum),
    })
}

fn spectral_fidelity(params: &DispersionParams, spectrum: &ModeSpectrum) -> f64 {
    compensated_sum(
        spectrum
            .populations()
            .iter()
            .enumerate()
            .map(|(k, &w)| w * params.phase(k + 1, 2.0).cos()),
    )
}

/// Intervals on `[0, l0]`: even, at least `4 s_max / r`, and (when possible)
/// such that `K r` is an integer so the FFT grid lands on `l0`.
fn isolated_grid_intervals(s_max: usize, ratio: f64) -> (usize, Option<usize>) {
    let mut k = ((4 * s_max) as f64 / ratio).ceil().max(2.0) as usize;
    k += k % 2;
    for candidate in (k..k + 2000).step_by(2) {
        let m = candidate as f64 * ratio;
        if (m - m.round()).abs() <= 1e-9 * m {
            return (candidate, Some(m.round() as usize));
        }
    }
    (k, None)
}

fn grid_fidelity(params: &DispersionParams, spectrum: &ModeSpectrum) -> f64 {
    let g = params.geometry();
    let (l0, l, s0) = (g.l0(), g.l(), g.s0() as f64);
    let coeffs = evolved_coefficients(params, spectrum, 2.0);
    let (k, full) = isolated_grid_intervals(spectrum.s_max(), g.ratio());
    let evolved: Vec<Complex64> = match full {
        Some(m) => sine_series_on_grid(&coeffs, m, l)[..=k].to_vec(),
        None => (0..=k)
            .map(|j| {
                let z = l0 * j as f64 / k as f64;
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * modes::mode_value((i + 1) as f64, l, z))
                    .sum()
            })
            .collect(),
    };
    let integrand: Vec<f64> = evolved
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let z = l0 * j as f64 / k as f64;
            e.re * modes::mode_value(s0, l0, z)
        })
        .collect();
    simpson(&integrand, l0 / k as f64)
}

/// Absolute geometry used when reproducing the fidelity curves:
/// `l0 = s0 λ / (2n)`, `l = ratio · l0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReproductionDefaults {
    pub wavelength: f64,
    pub n: f64,
    pub ratio: f64,
    pub truncation: Truncation,
}

impl Default for ReproductionDefaults {
    fn default() -> Self {
        Self {
            wavelength: DEFAULT_WAVELENGTH,
            n: DEFAULT_INDEX,
            ratio: DEFAULT_RATIO,
            truncation: Truncation::auto(),
        }
    }
}

impl ReproductionDefaults {
    pub fn geometry(&self, s0: u32) -> Result<CavityGeometry> {
        CavityGeometry::resonant(self.wavelength, self.n, s0, self.ratio)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityPoint {
    pub s0: u32,
    pub d_ps_per_nm_km: f64,
    pub fidelity: f64,
}

/// Spectral round-trip fidelity for every `(s0, D)` pair, `D` in ps/(nm·km).
///
/// Rows come out grouped by `s0` in input order, then by `D` in input order,
/// independent of how the work is scheduled.
pub fn fidelity_sweep(
    s0_values: &[u32],
    d_values: &[f64],
    defaults: &ReproductionDefaults,
    method: FidelityMethod,
) -> Result<Vec<FidelityPoint>> {
    let spectra = s0_values
        .par_iter()
        .map(|&s0| {
            let g = defaults.geometry(s0)?;
            modes::population_spectrum(&g, defaults.truncation)
        })
        .collect::<Result<Vec<_>>>()?;
    spectra
        .iter()
        .flat_map(|spec| d_values.iter().map(move |&d| (spec, d)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(spec, d)| {
            let params = DispersionParams::new(d, *spec.geometry());
            Ok(FidelityPoint {
                s0: spec.geometry().s0(),
                d_ps_per_nm_km: d,
                fidelity: roundtrip_fidelity(&params, spec, method)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_spectrum(s0: u32) -> ModeSpectrum {
        let g = ReproductionDefaults::default().geometry(s0).unwrap();
        modes::population_spectrum(&g, Truncation::auto()).unwrap()
    }

    #[test]
    fn frequency_without_dispersion() {
        let g = CavityGeometry::new(1e-6, 200.0, 2.2, 3).unwrap();
        let p = DispersionParams::new(0.0, g);
        for s in [1u32, 17, 600, 1234] {
            let expected = PI * s as f64 * C / (2.2 * g.l());
            let got = dispersive_frequency(&p, s);
            assert!((got - expected).abs() <= 1e-15 * expected);
        }
    }

    #[test]
    fn resonant_carrier_is_dispersion_free_bit_for_bit() {
        let g = CavityGeometry::new(1e-6, 200.0, 2.2, 3).unwrap();
        let plain = dispersive_frequency(&DispersionParams::new(0.0, g), 600);
        for d in [-30.0, 0.5, 10.0, 1e4] {
            let with = dispersive_frequency(&DispersionParams::new(d, g), 600);
            assert_eq!(with.to_bits(), plain.to_bits());
        }
    }

    #[test]
    fn frequency_reference_value() {
        // l = 1 mm, l/l0 = 200, s0 = 10, n = 2.2, D = 10 ps/(nm km), s = s_r / 2.
        // 30-digit evaluation of (π c / n) (1000 / 1e-3 + c·1e-5 / 4.84 · 0.25).
        let g = CavityGeometry::from_lengths(1e-3 / 200.0, 1e-3, 2.2, 10).unwrap();
        let p = DispersionParams::new(10.0, g);
        let got = dispersive_frequency(&p, 1000);
        let expected = 4.281_689_212_579_028e14;
        assert!((got - expected).abs() <= 1e-12 * expected, "{got:e}");
    }

    #[test]
    fn revival_without_dispersion() {
        for s0 in [1, 10] {
            let spec = default_spectrum(s0);
            let p = DispersionParams::new(0.0, *spec.geometry());
            let f = roundtrip_fidelity(&p, &spec, FidelityMethod::Spectral).unwrap();
            assert!((f - 1.0).abs() < 1e-6, "{f}");
        }
    }

    #[test]
    fn fidelity_is_even_in_dispersion() {
        let spec = default_spectrum(1);
        for d in [0.5, 3.0, 17.5] {
            let plus = roundtrip_fidelity(&DispersionParams::new(d, *spec.geometry()), &spec, FidelityMethod::Spectral).unwrap();
            let minus = roundtrip_fidelity(&DispersionParams::new(-d, *spec.geometry()), &spec, FidelityMethod::Spectral).unwrap();
            assert!((plus - minus).abs() <= 1e-12);
        }
    }

    #[test]
    fn grid_method_agrees_with_spectral() {
        let spec = default_spectrum(1);
        for d in [0.0, 2.0, 12.5] {
            let p = DispersionParams::new(d, *spec.geometry());
            let a = roundtrip_fidelity(&p, &spec, FidelityMethod::Spectral).unwrap();
            let b = roundtrip_fidelity(&p, &spec, FidelityMethod::Grid).unwrap();
            assert!((a - b).abs() <= 1e-6, "D={d}: {a} vs {b}");
        }
    }

    #[test]
    fn grid_method_without_fft_alignment() {
        // An irrational ratio never puts l0 on an FFT grid point: direct summation path.
        let ratio = 53f64.sqrt();
        let g = CavityGeometry::new(1e-6, ratio, 2.2, 2).unwrap();
        let spec = modes::population_spectrum(&g, Truncation::auto()).unwrap();
        assert!(isolated_grid_intervals(spec.s_max(), ratio).1.is_none());
        let p = DispersionParams::new(5e4, g);
        let a = roundtrip_fidelity(&p, &spec, FidelityMethod::Spectral).unwrap();
        let b = roundtrip_fidelity(&p, &spec, FidelityMethod::Grid).unwrap();
        assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
    }

    #[test]
    fn undersampled_grid_is_rejected() {
        let spec = default_spectrum(1);
        let p = DispersionParams::new(0.0, *spec.geometry());
        let err = field_snapshot(&p, &spec, 0.0, 2 * spec.s_max()).unwrap_err();
        assert!(matches!(err, Error::Undersampled { .. }));
    }

    #[test]
    fn mismatched_geometry_is_rejected() {
        let spec = default_spectrum(1);
        let other = ReproductionDefaults::default().geometry(2).unwrap();
        let p = DispersionParams::new(0.0, other);
        assert!(roundtrip_fidelity(&p, &spec, FidelityMethod::Spectral).is_err());
    }

    #[test]
    fn sweep_order_is_deterministic() {
        let ds: Vec<f64> = (0..8).map(|i| i as f64 * 1.5).collect();
        let rows = fidelity_sweep(&[3, 1], &ds, &ReproductionDefaults::default(), FidelityMethod::Spectral).unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows[..8].iter().all(|r| r.s0 == 3));
        assert!(rows[8..].iter().zip(&ds).all(|(r, d)| r.s0 == 1 && r.d_ps_per_nm_km == *d));
        let again = fidelity_sweep(&[3, 1], &ds, &ReproductionDefaults::default(), FidelityMethod::Spectral).unwrap();
        assert_eq!(rows, again);
    }
}
