//! Protocols as data: load a step list from JSON, run it on a
//! superposition, and see the photon cap stop an unphysical sequence.
//!
//! Run with `cargo run --example custom_protocol`.

use num_complex::Complex64;
use optoswitch::gates::{computational_encode, run_protocol, ProtocolScript, RegisterState};
use optoswitch::io::{state_to_json, trace_to_json};

fn main() -> optoswitch::Result<()> {
    // Exchange, flip both nodes, exchange again.
    let script = ProtocolScript::from_json(r#"["exchange", "pi", "exchange"]"#)?;
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let input = RegisterState::linear_combination([
        (h, &computational_encode(true, false)),
        (h, &computational_encode(false, true)),
    ])?;
    let run = run_protocol(&script, &input, true)?;
    println!("{script}");
    println!("{}", serde_json::to_string_pretty(&trace_to_json(&run.trace.unwrap()))?);

    // Moving three photons next to an excited atom and flipping it would need
    // a fourth photon, past the default cap of 3.
    let pump = ProtocolScript::from_json(r#"["exchange", "pi"]"#)?;
    let start = RegisterState::basis("e0.g3".parse()?)?;
    println!("\nstart {}", serde_json::to_string(&state_to_json(&start))?);
    match run_protocol(&pump, &start, false) {
        Ok(run) => println!("finished at {}", run.output),
        Err(e) => println!("stopped: {e}"),
    }
    Ok(())
}
