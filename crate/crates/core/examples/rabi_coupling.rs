//! Vacuum Rabi frequency of an atom in a wavelength-sized cavity.
//!
//! Run with `cargo run --example rabi_coupling`.

use optoswitch::device::{vacuum_rabi_frequency, NodeCoupling, UnitSystem};

fn main() -> optoswitch::Result<()> {
    let lambda = 1.24e-6;
    let n = 2.2;
    let ea0 = 8.478_353_6e-30; // e·a0 in C·m

    println!("{:>12} {:>14} {:>14} {:>12}", "d (C m)", "Omega0 CGS", "Omega0 SI", "period (ps)");
    for d in [ea0, 1e-29, 1e-28] {
        let c = NodeCoupling::with_cubic_volume(d, lambda, n)?;
        let cgs = vacuum_rabi_frequency(&c, UnitSystem::Cgs);
        let si = vacuum_rabi_frequency(&c, UnitSystem::Si);
        println!("{d:>12.4e} {cgs:>14.5e} {si:>14.5e} {:>12.4}", 2.0 * std::f64::consts::PI / cgs * 1e12);
    }

    // Larger mode volumes weaken the coupling as V^(-1/2).
    for scale in [1.0, 10.0, 100.0] {
        let v = scale * (lambda / n).powi(3);
        let c = NodeCoupling::new(1e-28, v, lambda)?;
        println!("V = {scale:>5} (lambda/n)^3: Omega0 = {:.4e} rad/s", vacuum_rabi_frequency(&c, UnitSystem::Cgs));
    }
    Ok(())
}
