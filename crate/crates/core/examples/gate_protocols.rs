//! SWAP and CNOT built from photon exchange and pi pulses, with the full
//! step-by-step trace for one input.
//!
//! Run with `cargo run --example gate_protocols`.

use optoswitch::gates::{
    cnot_protocol, computational_decode, computational_encode, run_protocol, swap_protocol, Decoded,
};

fn main() -> optoswitch::Result<()> {
    for (name, script) in [("SWAP", swap_protocol()), ("CNOT", cnot_protocol())] {
        println!("{name}: {script} ({} steps)", script.len());
        for (q1, q2) in [(false, false), (false, true), (true, false), (true, true)] {
            let out = run_protocol(&script, &computational_encode(q1, q2), false)?.output;
            let bits = match computational_decode(&out) {
                Decoded::Basis(a, b) => format!("{}{}", a as u8, b as u8),
                other => format!("{other:?}"),
            };
            println!("  {}{} -> {bits}   ({out})", q1 as u8, q2 as u8);
        }
    }

    let script = cnot_protocol();
    let run = run_protocol(&script, &computational_encode(true, false), true)?;
    println!("\nCNOT trace for input 10:");
    for (i, state) in run.trace.unwrap().iter().enumerate() {
        let step = if i == 0 { "input" } else { script.steps()[i - 1].symbol() };
        println!("  {i:>2} {step:>5}  {state}");
    }
    Ok(())
}
