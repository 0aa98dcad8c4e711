//! Mode populations of the common cavity right after the switch opens.
//!
//! Run with `cargo run --release --example release_spectrum`.

use optoswitch::modes::{population_spectrum, spectrum_for_plot, Normalization, Truncation};
use optoswitch::propagation::ReproductionDefaults;

fn main() -> optoswitch::Result<()> {
    let defaults = ReproductionDefaults::default();
    println!("l/l0 = {}, n = {}, lambda = {:e} m", defaults.ratio, defaults.n, defaults.wavelength);
    println!("{:>3} {:>8} {:>8} {:>12} {:>14}", "s0", "s_r", "s_max", "peak mode", "rel. FWHM");
    for s0 in 1..=10 {
        let g = defaults.geometry(s0)?;
        let spec = population_spectrum(&g, Truncation::auto())?;
        println!(
            "{:>3} {:>8} {:>8} {:>12} {:>14.5}",
            s0,
            g.resonant_index(),
            spec.s_max(),
            spec.peak_mode(),
            spec.relative_fwhm()
        );
    }

    // The populations near resonance for the narrowest case, normalized to peak 1.
    let spec = population_spectrum(&defaults.geometry(10)?, Truncation::auto())?;
    let rows = spectrum_for_plot(&spec, Normalization::Max1);
    println!("\ns0 = 10, modes 1990..=2010:");
    for (s, w) in &rows[1989..2010] {
        println!("  s = {s:>5}  W/W_max = {w:.6}");
    }
    println!("sum of W_s = {:.12}", spec.total_population());
    Ok(())
}
