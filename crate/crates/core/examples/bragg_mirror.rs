//! Quarter-wave Bragg mirrors: stop-band width, and how many periods a
//! weak index contrast needs before it blocks the channel.
//!
//! Run with `cargo run --release --example bragg_mirror`.

use optoswitch::device::{
    band_center_reflectivity, quarter_wave_reflectivity, reflectivity_spectrum, stopband_width, Ambient, GratingSpec,
    WavelengthRange,
};

fn main() -> optoswitch::Result<()> {
    let lambda = 1.24e-6;
    let n = 2.2;
    let amb = Ambient::uniform(n);

    let strong = GratingSpec::quarter_wave_centered(n, 0.04, lambda, 200)?;
    let spec = reflectivity_spectrum(&strong, &WavelengthRange::new(1.20e-6, 1.28e-6, 0.01e-9)?, amb)?;
    println!(
        "dn = 0.04, N = 200: peak R = {:.5}, width at R >= 0.99 = {:.3} nm",
        spec.reflectance.iter().cloned().fold(0.0, f64::max),
        stopband_width(&spec, 0.99)? * 1e9
    );

    println!("\ndn = 1e-3, band center:");
    println!("{:>6} {:>12} {:>12} {:>12}", "N", "R", "T", "R closed");
    for periods in [100, 500, 1000, 2000, 3000, 5000, 10000] {
        let g = GratingSpec::quarter_wave_centered(n, 1e-3, lambda, periods)?;
        let (r, t) = band_center_reflectivity(&g, amb);
        let closed = quarter_wave_reflectivity(g.n_high, g.n_low, periods, amb);
        println!("{periods:>6} {r:>12.6} {t:>12.4e} {closed:>12.6}");
    }

    let weak = GratingSpec::quarter_wave_centered(n, 1e-3, lambda, 3000)?;
    let spec = reflectivity_spectrum(&weak, &WavelengthRange::centered(lambda, 2e-9, 801)?, amb)?;
    let peak = spec.reflectance.iter().cloned().fold(0.0, f64::max);
    println!(
        "\ndn = 1e-3, N = 3000: peak R = {peak:.4}, FWHM = {:.3} nm",
        stopband_width(&spec, peak / 2.0)? * 1e9
    );
    Ok(())
}
