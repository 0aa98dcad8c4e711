//! Round-trip fidelity against group-velocity dispersion for a short and a
//! long isolated cavity.
//!
//! Run with `cargo run --release --example fidelity_sweep`.

use optoswitch::propagation::{fidelity_sweep, FidelityMethod, ReproductionDefaults};

fn main() -> optoswitch::Result<()> {
    let ds: Vec<f64> = (0..=30).map(f64::from).collect();
    let rows = fidelity_sweep(&[1, 10], &ds, &ReproductionDefaults::default(), FidelityMethod::Spectral)?;

    println!("{:>6} {:>12} {:>12}", "D", "F(s0=1)", "F(s0=10)");
    for (i, d) in ds.iter().enumerate() {
        println!("{d:>6} {:>12.6} {:>12.6}", rows[i].fidelity, rows[ds.len() + i].fidelity);
    }
    for s0 in [1, 10] {
        let last = rows
            .iter()
            .filter(|r| r.s0 == s0 && r.fidelity >= 0.99)
            .map(|r| r.d_ps_per_nm_km)
            .fold(f64::NAN, f64::max);
        println!("s0 = {s0}: F >= 0.99 up to D = {last} ps/(nm km)");
    }
    Ok(())
}
