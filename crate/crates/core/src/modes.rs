//! Longitudinal eigenmodes of the isolated and common cavities, and the
//! spectrum of common-cavity modes populated when the isolated cavity opens.
//!
//! The isolated cavity occupies `[0, l0]` and shares its left edge with the
//! common cavity `[0, l]`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// `|1 - s / s_r|` below which the overlap switches to its resonant limit.
pub const RESONANCE_TOL: f64 = 1e-9;
/// Default Parseval deficit accepted by automatic truncation.
pub const DEFAULT_TRUNCATION_EPS: f64 = 1e-8;
/// Default upper bound on the mode index searched by automatic truncation.
pub const DEFAULT_S_MAX_CAP: usize = 1_000_000;

/// Isolated cavity of length `l0` inside a common cavity of length
/// `l = ratio * l0`, with the isolated cavity initially holding mode `s0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CavityGeometry {
    l0: f64,
    ratio: f64,
    n: f64,
    s0: u32,
}

impl CavityGeometry {
    /// Builds a geometry from the isolated length and the ratio `l / l0`.
    ///
    /// Prefer this over [`CavityGeometry::from_lengths`] when the ratio is
    /// known exactly, so that an integer resonant index stays integer.
    pub fn new(l0: f64, ratio: f64, n: f64, s0: u32) -> Result<Self> {
        if !(l0 > 0.0 && l0.is_finite()) {
            return Err(Error::domain(format!("isolated length l0 must be > 0, got {l0}")));
        }
        if !(ratio >= 1.0 && ratio.is_finite()) {
            return Err(Error::domain(format!("length ratio l/l0 must be >= 1, got {ratio}")));
        }
        if !(n >= 1.0 && n.is_finite()) {
            return Err(Error::domain(format!("refractive index must be >= 1, got {n}")));
        }
        if s0 < 1 {
            return Err(Error::domain("initial mode index s0 must be >= 1"));
        }
        Ok(Self { l0, ratio, n, s0 })
    }

    pub fn from_lengths(l0: f64, l: f64, n: f64, s0: u32) -> Result<Self> {
        if !(l0 > 0.0) {
            return Err(Error::domain(format!("isolated length l0 must be > 0, got {l0}")));
        }
        Self::new(l0, l / l0, n, s0)
    }

    /// Geometry resonant with a transition at `wavelength`: `l0 = s0·λ/(2n)`.
    pub fn resonant(wavelength: f64, n: f64, s0: u32, ratio: f64) -> Result<Self> {
        if !(wavelength > 0.0) {
            return Err(Error::domain(format!("wavelength must be > 0, got {wavelength}")));
        }
        Self::new(s0 as f64 * wavelength / (2.0 * n), ratio, n, s0)
    }

    pub fn l0(&self) -> f64 {
        self.l0
    }

    pub fn l(&self) -> f64 {
        self.l0 * self.ratio
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn s0(&self) -> u32 {
        self.s0
    }

    /// Index of the common-cavity mode resonant with the isolated mode,
    /// `s_r = s0 · l / l0`. Not necessarily an integer.
    pub fn resonant_index(&self) -> f64 {
        self.s0 as f64 * self.ratio
    }
}

/// Normalized standing wave `sqrt(2/L) sin(π s z / L)` of a cavity `[0, L]`.
pub fn eigenmode(s: u32, length: f64, z: f64) -> Result<f64> {
    if s < 1 {
        return Err(Error::domain("mode index must be >= 1"));
    }
    if !(length > 0.0) {
        return Err(Error::domain(format!("cavity length must be > 0, got {length}")));
    }
    if !(0.0..=length).contains(&z) {
        return Err(Error::domain(format!("z = {z} outside [0, {length}]")));
    }
    Ok(mode_value(s as f64, length, z))
}

#[inline]
pub(crate) fn mode_value(s: f64, length: f64, z: f64) -> f64 {
    (2.0 / length).sqrt() * (PI * s * z / length).sin()
}

/// Projection `C_s = ⟨F_s(·, l) | F_{s0}(·, l0)⟩` of the isolated mode on the
/// common-cavity mode `s`.
pub fn overlap(geometry: &CavityGeometry, s: u32) -> Result<f64> {
    if s < 1 {
        return Err(Error::domain("mode index must be >= 1"));
    }
    Ok(overlap_at(geometry, s as f64))
}

/// Closed-form overlap evaluated at a real mode index.
///
/// Uses the identity `sin(π s / r) = (-1)^{s0} sin(π (s - s_r) / r)` to write
/// the amplitude as `2 s0 sqrt(r) sinc((s - s_r)/r) / (s + s_r)`, which has no
/// cancellation near the resonance.
pub fn overlap_at(geometry: &CavityGeometry, s: f64) -> f64 {
    let r = geometry.ratio;
    let s_r = geometry.resonant_index();
    if (1.0 - s / s_r).abs() < RESONANCE_TOL {
        // Positive: the sign the closed form takes just above s_r.
        return r.sqrt().recip();
    }
    let x = (s - s_r) / r;
    if x == x.round() {
        // sin(π x) vanishes exactly; s is a node of the isolated cavity.
        return 0.0;
    }
    let sinc = (PI * x).sin() / (PI * x);
    2.0 * geometry.s0 as f64 * r.sqrt() * sinc / (s + s_r)
}

/// How many common-cavity modes to keep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Truncation {
    Fixed(usize),
    /// Smallest `s_max` whose populations sum to at least `1 - eps`.
    Auto { eps: f64, cap: usize },
}

impl Truncation {
    pub fn auto() -> Self {
        Truncation::Auto {
            eps: DEFAULT_TRUNCATION_EPS,
            cap: DEFAULT_S_MAX_CAP,
        }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::auto()
    }
}

/// Overlap amplitudes and populations for `s = 1..=s_max`.
#[derive(Clone, Debug)]
pub struct ModeSpectrum {
    geometry: CavityGeometry,
    amplitudes: Vec<f64>,
    populations: Vec<f64>,
}

impl ModeSpectrum {
    pub fn geometry(&self) -> &CavityGeometry {
        &self.geometry
    }

    pub fn s_max(&self) -> usize {
        self.amplitudes.len()
    }

    /// `C_s` for `s = 1..=s_max`; index 0 holds `s = 1`.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// `W_s = C_s²`, indexed like [`ModeSpectrum::amplitudes`].
    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn total_population(&self) -> f64 {
        compensated_sum(self.populations.iter().copied())
    }

    /// Mode index with the largest population.
    pub fn peak_mode(&self) -> usize {
        argmax(&self.populations) + 1
    }

    /// Full width at half maximum of `W_s` around its peak, in units of `s_r`.
    /// Edges are located by linear interpolation between integer modes.
    pub fn relative_fwhm(&self) -> f64 {
        let w = &self.populations;
        let peak = argmax(w);
        let half = 0.5 * w[peak];
        let mut lo = peak;
        while lo > 0 && w[lo - 1] >= half {
            lo -= 1;
        }
        let left = if lo == 0 {
            0.0
        } else {
            lo as f64 - (w[lo] - half) / (w[lo] - w[lo - 1])
        };
        let mut hi = peak;
        while hi + 1 < w.len() && w[hi + 1] >= half {
            hi += 1;
        }
        let right = if hi + 1 == w.len() {
            hi as f64
        } else {
            hi as f64 + (w[hi] - half) / (w[hi] - w[hi + 1])
        };
        (right - left) / self.geometry.resonant_index()
    }
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        })
        .0
}

pub(crate) fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Populations of the common-cavity modes after the isolated cavity opens.
///
/// With [`Truncation::Auto`] the search starts at `ceil(4 s_r)` and doubles
/// until the Parseval deficit is below `eps`, then trims to the smallest
/// sufficient `s_max`.
pub fn population_spectrum(geometry: &CavityGeometry, truncation: Truncation) -> Result<ModeSpectrum> {
    let amplitudes = match truncation {
        Truncation::Fixed(s_max) => {
            if s_max < 1 {
                return Err(Error::domain("s_max must be >= 1"));
            }
            (1..=s_max).map(|s| overlap_at(geometry, s as f64)).collect()
        }
        Truncation::Auto { eps, cap } => auto_amplitudes(geometry, eps, cap)?,
    };
    let populations = amplitudes.iter().map(|c| c * c).collect();
    Ok(ModeSpectrum {
        geometry: *geometry,
        amplitudes,
        populations,
    })
}

fn auto_amplitudes(geometry: &CavityGeometry, eps: f64, cap: usize) -> Result<Vec<f64>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(format!("truncation eps must lie in (0, 1), got {eps}")));
    }
    let target = 1.0 - eps;
    let mut limit = ((4.0 * geometry.resonant_index()).ceil() as usize).clamp(1, cap.max(1));
    let mut amplitudes: Vec<f64> = Vec::with_capacity(limit);
    let mut sum = 0.0;
    let mut comp = 0.0;
    loop {
        for s in amplitudes.len() + 1..=limit {
            let c = overlap_at(geometry, s as f64);
            amplitudes.push(c);
            // Neumaier running sum; stop at the first s reaching the target.
            let w = c * c;
            let t = sum + w;
            comp += if sum.abs() >= w { (sum - t) + w } else { (w - t) + sum };
            sum = t;
            if sum + comp >= target {
                return Ok(amplitudes);
            }
        }
        if limit >= cap {
            return Err(Error::Truncation {
                eps,
                cap,
                reached: sum + comp,
            });
        }
        limit = (2 * limit).min(cap);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    Raw,
    /// Rescaled so that the largest population equals 1.
    Max1,
}

/// `(s, value)` rows for plotting a spectrum.
pub fn spectrum_for_plot(spectrum: &ModeSpectrum, normalization: Normalization) -> Vec<(usize, f64)> {
    // Divide rather than multiply by the reciprocal so the peak is exactly 1.
    let divisor = match normalization {
        Normalization::Raw => 1.0,
        Normalization::Max1 => match spectrum.populations[spectrum.peak_mode() - 1] {
            peak if peak > 0.0 => peak,
            _ => 1.0,
        },
    };
    spectrum
        .populations
        .iter()
        .enumerate()
        .map(|(i, &w)| (i + 1, w / divisor))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(ratio: f64, s0: u32) -> CavityGeometry {
        CavityGeometry::new(1e-6, ratio, 2.2, s0).unwrap()
    }

    #[test]
    fn eigenmode_values() {
        assert!((eigenmode(1, 2.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(eigenmode(3, 1.0, 0.0).unwrap().abs() < 1e-15);
        assert!((eigenmode(2, 1.0, 0.25).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(eigenmode(4, 1.0, 1.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn eigenmode_domain_errors() {
        assert!(matches!(eigenmode(0, 1.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(eigenmode(1, 0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(eigenmode(1, 1.0, 1.5), Err(Error::Domain(_))));
        assert!(matches!(eigenmode(1, 1.0, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn geometry_validation() {
        assert!(CavityGeometry::new(0.0, 2.0, 2.2, 1).is_err());
        assert!(CavityGeometry::new(1.0, 0.5, 2.2, 1).is_err());
        assert!(CavityGeometry::new(1.0, 2.0, 0.9, 1).is_err());
        assert!(CavityGeometry::new(1.0, 2.0, 2.2, 0).is_err());
        let g = CavityGeometry::from_lengths(1.0, 7.5, 1.0, 2).unwrap();
        assert_eq!(g.resonant_index(), 15.0);
    }

    #[test]
    fn identical_cavities_are_orthonormal() {
        let g = geom(1.0, 3);
        assert_eq!(overlap(&g, 3).unwrap(), 1.0);
        for s in [1, 2, 4, 5, 10] {
            assert_eq!(overlap(&g, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn resonant_limit_and_continuity() {
        let g = geom(200.0, 1);
        let limit = overlap(&g, 200).unwrap();
        assert!((limit - (1.0f64 / 200.0).sqrt()).abs() < 1e-15);
        let below = overlap_at(&g, 200.0 * (1.0 - 1e-6));
        let above = overlap_at(&g, 200.0 * (1.0 + 1e-6));
        assert!(below > limit && limit > above, "{below} {limit} {above}");
        assert!((below - limit).abs() < 1e-7 && (above - limit).abs() < 1e-7);
    }

    #[test]
    fn identity_spectrum() {
        let spec = population_spectrum(&geom(1.0, 3), Truncation::Fixed(10)).unwrap();
        for (i, w) in spec.populations().iter().enumerate() {
            assert_eq!(*w, if i == 2 { 1.0 } else { 0.0 });
        }
        let rows = spectrum_for_plot(&spec, Normalization::Max1);
        let nonzero: Vec<_> = rows.iter().filter(|r| r.1 != 0.0).collect();
        assert_eq!(nonzero, vec![&(3, 1.0)]);
    }

    #[test]
    fn auto_truncation_meets_parseval() {
        let spec = population_spectrum(&geom(200.0, 1), Truncation::auto()).unwrap();
        let total = spec.total_population();
        assert!((1.0 - 1e-8..=1.0).contains(&total), "{total}");
        // smallest such s_max
        let without_last = total - spec.populations().last().unwrap();
        assert!(without_last < 1.0 - 1e-8);
    }

    #[test]
    fn truncation_cap_error() {
        let err = population_spectrum(
            &geom(200.0, 1),
            Truncation::Auto {
                eps: 1e-8,
                cap: 1000,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Truncation { cap: 1000, .. }));
    }

    #[test]
    fn raw_plot_rows_match_populations() {
        let spec = population_spectrum(&geom(7.5, 2), Truncation::Fixed(60)).unwrap();
        let rows = spectrum_for_plot(&spec, Normalization::Raw);
        assert_eq!(rows.len(), 60);
        for (row, w) in rows.iter().zip(spec.populations()) {
            assert_eq!(row.1, *w);
        }
        let max1 = spectrum_for_plot(&spec, Normalization::Max1);
        let peak = max1.iter().map(|r| r.1).fold(0.0, f64::max);
        assert_eq!(peak, 1.0);
    }

    #[test]
    fn higher_initial_modes_narrow_the_spectrum() {
        let widths: Vec<f64> = (1..=10)
            .map(|s0| {
                population_spectrum(&geom(200.0, s0), Truncation::Fixed(8 * 200 * s0 as usize))
                    .unwrap()
                    .relative_fwhm()
            })
            .collect();
        for pair in widths.windows(2) {
            assert!(pair[1] < pair[0], "{widths:?}");
        }
    }
}
