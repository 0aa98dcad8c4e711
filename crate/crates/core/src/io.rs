//! CSV and JSON emitters for the data products.
//!
//! Floats are written in their shortest round-trip decimal form.

use crate::device::ReflectivitySpectrum;
use crate::error::{Error, Result};
use crate::gates::{BasisConfig, RegisterState};
use crate::propagation::{FidelityPoint, FieldState};
use num_complex::Complex64;
use serde_json::{Map, Value};
use std::io::Write;

/// Shortest decimal string that parses back to the same `f64`; integral
/// values drop the trailing `.0`.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(int) => int.to_owned(),
        None => s,
    }
}

/// `x` rounded to `digits` significant digits in exponent form, trailing
/// zeros dropped (`8.33e-4`). For human-readable report lines.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let s = format!("{x:.prec$e}", prec = digits.saturating_sub(1));
    match s.split_once('e') {
        Some((mantissa, exp)) if mantissa.contains('.') => {
            format!("{}e{exp}", mantissa.trim_end_matches('0').trim_end_matches('.'))
        }
        _ => s,
    }
}

pub fn write_spectrum_csv<W: Write>(mut w: W, rows: &[(usize, f64)]) -> Result<()> {
    writeln!(w, "s,value")?;
    for (s, v) in rows {
        writeln!(w, "{s},{}", fmt_f64(*v))?;
    }
    Ok(())
}

pub fn write_fidelity_csv<W: Write>(mut w: W, points: &[FidelityPoint]) -> Result<()> {
    writeln!(w, "s0,D_ps_per_nm_km,F")?;
    for p in points {
        writeln!(w, "{},{},{}", p.s0, fmt_f64(p.d_ps_per_nm_km), fmt_f64(p.fidelity))?;
    }
    Ok(())
}

pub fn write_field_csv<W: Write>(mut w: W, field: &FieldState) -> Result<()> {
    writeln!(w, "z_m,re,im,abs2")?;
    for (z, v) in field.z.iter().zip(&field.values) {
        writeln!(w, "{},{},{},{}", fmt_f64(*z), fmt_f64(v.re), fmt_f64(v.im), fmt_f64(v.norm_sqr()))?;
    }
    Ok(())
}

pub fn write_reflectivity_csv<W: Write>(mut w: W, spectrum: &ReflectivitySpectrum) -> Result<()> {
    writeln!(w, "lambda_m,R,T")?;
    for ((l, r), t) in spectrum.wavelengths.iter().zip(&spectrum.reflectance).zip(&spectrum.transmittance) {
        writeln!(w, "{},{},{}", fmt_f64(*l), fmt_f64(*r), fmt_f64(*t))?;
    }
    Ok(())
}

/// `{"g1.e0": [re, im], ...}` in canonical configuration order.
pub fn state_to_json(state: &RegisterState) -> Value {
    let map: Map<String, Value> = state
        .amplitudes()
        .iter()
        .map(|(k, a)| (k.to_string(), Value::from(vec![a.re, a.im])))
        .collect();
    Value::Object(map)
}

pub fn trace_to_json(trace: &[RegisterState]) -> Value {
    Value::Array(trace.iter().map(state_to_json).collect())
}

pub fn state_from_json(value: &Value) -> Result<RegisterState> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("register state", &value.to_string(), "expected a JSON object"))?;
    let mut terms = Vec::with_capacity(obj.len());
    for (label, amp) in obj {
        let config: BasisConfig = label.parse()?;
        let pair = amp
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((a[0].as_f64()?, a[1].as_f64()?)))
            .ok_or_else(|| Error::parse("amplitude", &amp.to_string(), "expected [re, im]"))?;
        terms.push((config, Complex64::new(pair.0, pair.1)));
    }
    RegisterState::from_amplitudes(terms)
}
