//! Switching a mirror off with the Kerr effect: a pump shifts the
//! high-index layers down to the low index and the grating disappears.
//!
//! Run with `cargo run --release --example kerr_switch`.

use optoswitch::device::{band_center_reflectivity, kerr_index_shift, Ambient, GratingSpec, Material};

fn main() -> optoswitch::Result<()> {
    let medium = Material::LithiumNiobate.kerr();
    println!("LiNbO3: n0 = {}, n2 = {:e} cm^2/W", medium.n0, medium.n2_cm2_per_w());

    for intensity in [1e9, 1e10, 1e11] {
        println!("I = {intensity:e} W/cm^2 -> dn = {:e}", kerr_index_shift(&medium, intensity)?);
    }

    let dn = kerr_index_shift(&medium, 1e11)?;
    let amb = Ambient::uniform(medium.n0);
    let closed = GratingSpec::quarter_wave_centered(medium.n0, dn, 1.24e-6, 3000)?;
    println!("\ngrating with contrast {dn:e}, 3000 periods");
    for pump in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let g = closed.with_high_index(closed.n_high - pump * dn);
        let (r, t) = band_center_reflectivity(&g, amb);
        println!("  pump {:>4.0}% of full shift: R = {r:.6}, T = {t:.6}", pump * 100.0);
    }
    Ok(())
}
