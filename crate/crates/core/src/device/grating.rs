//! Normal-incidence reflectivity of a periodic two-index stack.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Reflectivity level that defines the stop-band edges by default.
pub const DEFAULT_BAND_THRESHOLD: f64 = 0.99;
const MIN_BAND_SAMPLES: usize = 10;

/// `periods` repetitions of a high-index layer followed by a low-index layer.
/// The high layer fills `duty · period` of each period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GratingSpec {
    pub n_high: f64,
    pub n_low: f64,
    pub period: f64,
    pub periods: usize,
    pub duty: f64,
}

impl GratingSpec {
    pub fn new(n_high: f64, n_low: f64, period: f64, periods: usize, duty: f64) -> Result<Self> {
        let spec = Self {
            n_high,
            n_low,
            period,
            periods,
            duty,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Quarter-wave layers at `design_wavelength`.
    pub fn quarter_wave(n_high: f64, n_low: f64, design_wavelength: f64, periods: usize) -> Result<Self> {
        if !(design_wavelength > 0.0) {
            return Err(Error::domain(format!("design wavelength must be > 0, got {design_wavelength}")));
        }
        if !(n_low >= 1.0) {
            return Err(Error::domain(format!("n_low must be >= 1, got {n_low}")));
        }
        let high = design_wavelength / (4.0 * n_high);
        let low = design_wavelength / (4.0 * n_low);
        Self::new(n_high, n_low, high + low, periods, high / (high + low))
    }

    /// Quarter-wave stack with indices `n ± contrast/2`.
    pub fn quarter_wave_centered(n: f64, contrast: f64, design_wavelength: f64, periods: usize) -> Result<Self> {
        Self::quarter_wave(n + 0.5 * contrast, n - 0.5 * contrast, design_wavelength, periods)
    }

    fn validate(&self) -> Result<()> {
        if !(self.n_low >= 1.0 && self.n_high >= self.n_low) {
            return Err(Error::domain(format!(
                "need n_high >= n_low >= 1, got n_high = {}, n_low = {}",
                self.n_high, self.n_low
            )));
        }
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(Error::domain(format!("period must be > 0, got {}", self.period)));
        }
        if !(0.0..=1.0).contains(&self.duty) {
            return Err(Error::domain(format!("duty cycle must lie in [0, 1], got {}", self.duty)));
        }
        Ok(())
    }

    pub fn contrast(&self) -> f64 {
        self.n_high - self.n_low
    }

    pub fn high_thickness(&self) -> f64 {
        self.duty * self.period
    }

    pub fn low_thickness(&self) -> f64 {
        (1.0 - self.duty) * self.period
    }

    /// Same layer geometry with a different high index (e.g. after a Kerr
    /// shift). The result may have `n_high < n_low`, so it is not validated
    /// against the ordering invariant.
    pub fn with_high_index(&self, n_high: f64) -> Self {
        Self { n_high, ..*self }
    }
}

/// Media on the incident and exit side of the stack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ambient {
    pub incident: f64,
    pub substrate: f64,
}

impl Ambient {
    pub fn uniform(n: f64) -> Self {
        Self {
            incident: n,
            substrate: n,
        }
    }
}

/// Inclusive, uniformly stepped wavelength range (m).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavelengthRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl WavelengthRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start > 0.0 && stop >= start && step > 0.0) {
            return Err(Error::domain(format!(
                "invalid wavelength range {start}..{stop} step {step}"
            )));
        }
        Ok(Self { start, stop, step })
    }

    /// Range of `count` samples centered on `center` with spacing `step`.
    pub fn centered(center: f64, half_width: f64, count: usize) -> Result<Self> {
        let count = count.max(2);
        Self::new(center - half_width, center + half_width, 2.0 * half_width / (count - 1) as f64)
    }

    pub fn samples(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectivitySpectrum {
    pub wavelengths: Vec<f64>,
    pub reflectance: Vec<f64>,
    pub transmittance: Vec<f64>,
}

/// Characteristic matrix of a lossless stack at normal incidence. Such
/// matrices keep the form `[[a, i b], [i c, d]]` with real entries under
/// multiplication, so only `(a, b, c, d)` is stored.
#[derive(Clone, Copy, Debug)]
struct Characteristic {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

/// Rescaling step for the running product; a power of two, so exact.
const RESCALE_LOG2: i32 = 512;
/// Below this entry size the determinant is still meaningful and is
/// renormalized to 1 each period; above it `ε |M|²` swamps it, and `T` is
/// already negligible anyway.
const RENORMALIZE_BELOW: f64 = (1u64 << 26) as f64;

impl Characteristic {
    const IDENTITY: Self = Self {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    fn layer(n: f64, thickness: f64, wavelength: f64) -> Self {
        let (s, c) = (2.0 * PI * n * thickness / wavelength).sin_cos();
        Self {
            a: c,
            b: s / n,
            c: n * s,
            d: c,
        }
    }

    fn then(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a - self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.d * rhs.d - self.c * rhs.b,
        }
    }

    /// `ad + bc` by Kahan's fused-multiply-add scheme, accurate to a few ulps
    /// of the result even when the two products nearly cancel.
    fn det(&self) -> f64 {
        let w = self.b * self.c;
        let e = self.b.mul_add(self.c, -w);
        self.a.mul_add(self.d, w) + e
    }

    fn magnitude(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    fn scaled(&self, k: f64) -> Self {
        Self {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
        }
    }
}

/// Reflectance and transmittance of the stack at one wavelength.
///
/// `T` comes from the transmitted amplitude rather than `1 - R`, so
/// `R + T = 1` is a real check on the numerics. The running product is
/// renormalized to unit determinant each period, which stops the rounding in
/// `det(cell)` from compounding over thousands of periods. Strong mirrors make
/// the product grow like `(n_high/n_low)^N`; past [`RENORMALIZE_BELOW`] it is
/// instead rescaled by exact powers of two, the scale carried into `T`.
pub fn reflectance_at(grating: &GratingSpec, wavelength: f64, ambient: Ambient) -> (f64, f64) {
    let cell = Characteristic::layer(grating.n_high, grating.high_thickness(), wavelength)
        .then(&Characteristic::layer(grating.n_low, grating.low_thickness(), wavelength));
    let shrink = 2f64.powi(-RESCALE_LOG2);
    let mut total = Characteristic::IDENTITY;
    let mut rescales = 0i32;
    for _ in 0..grating.periods {
        total = total.then(&cell);
        let size = total.magnitude();
        if size < RENORMALIZE_BELOW {
            let det = total.det();
            if det > 0.0 {
                total = total.scaled(det.sqrt().recip());
            }
        } else if size > 1.0 / shrink {
            total = total.scaled(shrink);
            rescales += 1;
        }
    }
    let (n0, ns) = (ambient.incident, ambient.substrate);
    // B = a + i b ns, C = i c + d ns; r = (n0 B - C) / (n0 B + C), t = 2 n0 / (n0 B + C).
    let num = Complex64::new(n0 * total.a - ns * total.d, n0 * ns * total.b - total.c);
    let den = Complex64::new(n0 * total.a + ns * total.d, n0 * ns * total.b + total.c);
    let r = (num / den).norm_sqr();
    let t = 4.0 * n0 * ns / den.norm_sqr();
    // Undo the rescaling: t carries a factor 2^(-2 k RESCALE_LOG2), applied in steps.
    let t = (0..rescales).fold(t, |t, _| t * shrink * shrink);
    (r, t)
}

/// Reflectivity over a wavelength range.
pub fn reflectivity_spectrum(grating: &GratingSpec, range: &WavelengthRange, ambient: Ambient) -> Result<ReflectivitySpectrum> {
    grating.validate()?;
    if !(ambient.incident >= 1.0 && ambient.substrate >= 1.0) {
        return Err(Error::domain("ambient indices must be >= 1"));
    }
    let wavelengths = range.samples();
    let (reflectance, transmittance) = wavelengths
        .par_iter()
        .map(|&w| reflectance_at(grating, w, ambient))
        .unzip();
    Ok(ReflectivitySpectrum {
        wavelengths,
        reflectance,
        transmittance,
    })
}

/// Reflectance at the quarter-wave design wavelength `λ = 2 n_high d_high + 2 n_low d_low`.
pub fn band_center_reflectivity(grating: &GratingSpec, ambient: Ambient) -> (f64, f64) {
    let design = 2.0 * (grating.n_high * grating.high_thickness() + grating.n_low * grating.low_thickness());
    reflectance_at(grating, design, ambient)
}

/// Closed-form reflectance of `periods` quarter-wave (H, L) pairs at the
/// design wavelength between media `ambient.incident` and `ambient.substrate`.
pub fn quarter_wave_reflectivity(n_high: f64, n_low: f64, periods: usize, ambient: Ambient) -> f64 {
    let rho = (n_low / n_high).powi(2 * periods as i32);
    let (n0, ns) = (ambient.incident, ambient.substrate);
    ((n0 * rho - ns) / (n0 * rho + ns)).powi(2)
}

/// Width of the contiguous region around the reflectivity peak where
/// `R >= threshold`, with edges interpolated linearly between samples.
pub fn stopband_width(spectrum: &ReflectivitySpectrum, threshold: f64) -> Result<f64> {
    let r = &spectrum.reflectance;
    let lam = &spectrum.wavelengths;
    let peak = (0..r.len())
        .max_by(|&a, &b| r[a].total_cmp(&r[b]))
        .ok_or(Error::NoBand { threshold })?;
    if r[peak] < threshold {
        return Err(Error::NoBand { threshold });
    }
    let mut lo = peak;
    while lo > 0 && r[lo - 1] >= threshold {
        lo -= 1;
    }
    let mut hi = peak;
    while hi + 1 < r.len() && r[hi + 1] >= threshold {
        hi += 1;
    }
    if lo == 0 || hi + 1 == r.len() {
        return Err(Error::domain("stop band edge not bracketed by the sampled range"));
    }
    let samples = hi - lo + 1;
    if samples < MIN_BAND_SAMPLES {
        return Err(Error::UnresolvedBand {
            samples,
            needed: MIN_BAND_SAMPLES,
        });
    }
    let edge = |inside: usize, outside: usize| {
        let frac = (r[inside] - threshold) / (r[inside] - r[outside]);
        lam[inside] + frac * (lam[outside] - lam[inside])
    };
    Ok(edge(hi, hi + 1) - edge(lo, lo - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DESIGN: f64 = 1.24e-6;

    #[test]
    fn strong_mirrors_stay_finite() {
        let g = GratingSpec::quarter_wave(1.79, 1.3, DESIGN, 3000).unwrap();
        for w in [DESIGN, 1.1e-6, 1.5e-6] {
            let (r, t) = reflectance_at(&g, w, Ambient::uniform(1.3));
            assert!(r.is_finite() && t.is_finite());
            assert!((r + t - 1.0).abs() <= 1e-12, "{r} {t}");
        }
        assert_eq!(band_center_reflectivity(&g, Ambient::uniform(1.3)).0, 1.0);
    }

    #[test]
    fn empty_stack_is_a_bare_interface() {
        let g = GratingSpec::quarter_wave(2.3, 2.1, DESIGN, 0).unwrap();
        let (r, t) = reflectance_at(&g, 1.3e-6, Ambient::uniform(1.5));
        assert!(r.abs() < 1e-30 && (t - 1.0).abs() < 1e-15);
        let (r, t) = reflectance_at(
            &g,
            1.3e-6,
            Ambient {
                incident: 1.0,
                substrate: 1.5,
            },
        );
        assert!((r - 0.04).abs() < 1e-15, "{r}");
        assert!((r + t - 1.0).abs() < 1e-15);
    }

    #[test]
    fn matches_closed_form_at_band_center() {
        let amb = Ambient::uniform(2.2);
        for n in [1, 10, 100] {
            let g = GratingSpec::quarter_wave_centered(2.2, 0.04, DESIGN, n).unwrap();
            let (tmm, _) = reflectance_at(&g, DESIGN, amb);
            let exact = quarter_wave_reflectivity(g.n_high, g.n_low, n, amb);
            assert!((tmm - exact).abs() < 1e-9, "N={n}: {tmm} vs {exact}");
        }
    }

    #[test]
    fn zero_contrast_has_no_band() {
        let g = GratingSpec::quarter_wave(2.2, 2.2, DESIGN, 500).unwrap();
        let range = WavelengthRange::centered(DESIGN, 20e-9, 401).unwrap();
        let spec = reflectivity_spectrum(&g, &range, Ambient::uniform(2.2)).unwrap();
        assert!(matches!(stopband_width(&spec, DEFAULT_BAND_THRESHOLD), Err(Error::NoBand { .. })));
    }

    #[test]
    fn coarse_sampling_is_reported() {
        let g = GratingSpec::quarter_wave_centered(2.2, 0.04, DESIGN, 200).unwrap();
        let range = WavelengthRange::centered(DESIGN, 40e-9, 21).unwrap();
        let spec = reflectivity_spectrum(&g, &range, Ambient::uniform(2.2)).unwrap();
        assert!(matches!(
            stopband_width(&spec, DEFAULT_BAND_THRESHOLD),
            Err(Error::UnresolvedBand { .. })
        ));
    }

    #[test]
    fn validation() {
        assert!(GratingSpec::new(2.0, 2.2, 1e-7, 10, 0.5).is_err());
        assert!(GratingSpec::new(2.2, 0.9, 1e-7, 10, 0.5).is_err());
        assert!(GratingSpec::new(2.2, 2.0, 0.0, 10, 0.5).is_err());
        assert!(GratingSpec::new(2.2, 2.0, 1e-7, 10, 1.5).is_err());
        assert!(WavelengthRange::new(1e-6, 0.9e-6, 1e-9).is_err());
    }

    #[test]
    fn range_samples_include_both_ends() {
        let r = WavelengthRange::new(1.0e-6, 1.1e-6, 0.01e-6).unwrap();
        let s = r.samples();
        assert_eq!(s.len(), 11);
        assert!((s[10] - 1.1e-6).abs() < 1e-18);
    }
}
