//! The `optoswitch` binary end to end.

use std::process::{Command, Output};

fn optoswitch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optoswitch")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gate_swap_trace() {
    let o = optoswitch(&["gate", "--protocol", "swap", "--input", "10", "--trace"]);
    assert!(o.status.success());
    let trace: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let trace = trace.as_array().unwrap();
    assert_eq!(trace.len(), 6);
    assert_eq!(trace[0], serde_json::json!({"g1.e0": [1.0, 0.0]}));
    assert_eq!(trace[5], serde_json::json!({"e0.g1": [1.0, 0.0]}));
}

#[test]
fn gate_reads_protocol_and_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let proto = dir.path().join("p.json");
    std::fs::write(&proto, r#"["exchange", "pi", "exchange", "pi", "exchange"]"#).unwrap();
    let state = dir.path().join("s.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    std::fs::write(&state, format!(r#"{{"g1.e0": [{h}, 0.0], "e0.e0": [0.0, {h}]}}"#)).unwrap();
    let o = optoswitch(&[
        "gate",
        "--protocol",
        &format!("file:{}", proto.display()),
        "--input",
        state.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(out, serde_json::json!({"e0.g1": [h, 0.0], "e0.e0": [0.0, h]}));
}

#[test]
fn fidelity_revival_row() {
    let o = optoswitch(&["fidelity", "--s0", "1", "--D", "0"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s0,D_ps_per_nm_km,F"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..2], ["1", "0"]);
    assert!((row[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn kerr_report() {
    let o = optoswitch(&["kerr", "--material", "linbo3", "--intensity", "1e11W_cm2"]);
    assert_eq!(stdout(&o), "delta_n=8.33e-4\n");
}

#[test]
fn rabi_report_is_one_line() {
    let text = stdout(&optoswitch(&["rabi"]));
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("omega0="));
}

#[test]
fn spectrum_variants() {
    let text = stdout(&optoswitch(&["spectrum", "--s0", "3", "--ratio", "1"]));
    let nonzero = text.lines().skip(1).filter(|l| !l.ends_with(",0")).count();
    assert_eq!(nonzero, 1, "{text}");

    let text = stdout(&optoswitch(&["spectrum", "--s0", "1", "--ratio", "200", "--norm", "raw"]));
    let sum: f64 = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert!((1.0 - 1e-8..=1.0).contains(&sum), "{sum}");

    let text = stdout(&optoswitch(&["spectrum", "--s0", "1..10", "--ratio", "200", "--norm", "max1"]));
    let blocks: Vec<&str> = text.split("# s0=").skip(1).collect();
    assert_eq!(blocks.len(), 10);
    for (i, block) in blocks.iter().enumerate() {
        let s_r = 200.0 * (i + 1) as f64;
        let peak = block
            .lines()
            .skip(2)
            .find(|l| l.ends_with(",1"))
            .map(|l| l.split(',').next().unwrap().parse::<f64>().unwrap())
            .unwrap();
        assert!((peak - s_r).abs() <= 0.2 * s_r, "s0={}: peak {peak}", i + 1);
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let args = ["reflectivity", "--periods", "500", "--step", "0.05nm"];
    let direct = optoswitch(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let o = optoswitch(&with_file);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    assert!(stdout(&direct).starts_with("lambda_m,R,T\n"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"s0": "1", "D": ["2ps_nm_km", "4ps_nm_km"], "ratio": 50}"#).unwrap();
    let text = stdout(&optoswitch(&["fidelity", "--config", cfg.to_str().unwrap()]));
    assert_eq!(text.lines().count(), 3);
    let text = stdout(&optoswitch(&["fidelity", "--config", cfg.to_str().unwrap(), "--D", "6"]));
    assert_eq!(text.lines().nth(1).unwrap().split(',').nth(1), Some("6"));

    std::fs::write(&cfg, r#"{"intensity": 1e11}"#).unwrap();
    let o = optoswitch(&["kerr", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(optoswitch(&["spectrum", "--s0", "zero"]).status.code(), Some(1));
    assert_eq!(optoswitch(&["frobnicate"]).status.code(), Some(1));
    let o = optoswitch(&["spectrum", "--ratio", "0.5"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let o = optoswitch(&["gate", "--protocol", "swap", "--input", "x"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(optoswitch(&["verify", "--only", "9"]).status.code(), Some(0));
    assert_eq!(optoswitch(&["verify", "--only", "8"]).status.code(), Some(3));
    assert_eq!(optoswitch(&["--help"]).status.code(), Some(0));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["fidelity", "--s0", "1,2", "--D", "0:4:1", "--ratio", "40"];
    assert_eq!(optoswitch(&args).stdout, optoswitch(&args).stdout);
}
