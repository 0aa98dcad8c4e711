//! The released packet travels to the far mirror and back. Without
//! dispersion it is mirrored after one transit and restored after two.
//!
//! Run with `cargo run --release --example field_snapshots`.

use num_complex::Complex64;
use optoswitch::modes::{eigenmode, population_spectrum, Truncation};
use optoswitch::propagation::{field_snapshot_at_transits, DispersionParams, ReproductionDefaults};

fn main() -> optoswitch::Result<()> {
    let g = ReproductionDefaults::default().geometry(1)?;
    let spec = population_spectrum(&g, Truncation::auto())?;
    let n_z = 4 * spec.s_max() + 1;

    let initial = |z: f64| -> Complex64 {
        if z <= g.l0() {
            eigenmode(g.s0(), g.l0(), z).unwrap().into()
        } else {
            Complex64::default()
        }
    };

    for d in [0.0, 10.0] {
        let params = DispersionParams::new(d, g);
        println!("D = {d} ps/(nm km), round trip {:.4e} s", params.round_trip_time());
        for tau in [0.0, 0.5, 1.0, 1.5, 2.0] {
            let field = field_snapshot_at_transits(&params, &spec, tau, n_z)?;
            let near = field.energy_between(0.0, g.l0()) / field.energy();
            let far = field.energy_between(g.l() - g.l0(), g.l()) / field.energy();
            let start: Vec<Complex64> = field.z.iter().map(|&z| initial(z)).collect();
            let mirrored: Vec<Complex64> = field.z.iter().map(|&z| initial(g.l() - z)).collect();
            println!(
                "  t = {tau:.1} l n/c: energy in first l0 {near:.6}, in last l0 {far:.6}, \
                 overlap with start {:.8}, with mirror image {:.8}",
                field.normalized_overlap(&start),
                field.normalized_overlap(&mirrored)
            );
        }
    }
    Ok(())
}
