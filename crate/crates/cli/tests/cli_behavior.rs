//! End-to-end behavior of the qgas binary: determinism, CSV/JSON value
//! parity, exit-status policy, and per-row error flagging.

use std::path::Path;
use std::process::{Command, Output};

fn qgas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_spectrum(dir: &Path, text: &str) -> String {
    let path = dir.join("spectrum.txt");
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn identical_configs_yield_byte_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spectrum(dir.path(), "0.0 1\n0.5 2\n1.0 1\n");
    let command_sets: Vec<Vec<String>> = vec![
        vec!["algebra-verify".into(), "--seed".into(), "7".into()],
        vec![
            "discrete".into(),
            "--spectrum".into(),
            spec.clone(),
            "--beta".into(),
            "1.5".into(),
            "--delta".into(),
            "0.4".into(),
            "--grid".into(),
            "-1:3:9".into(),
            "--exact-check".into(),
        ],
        vec![
            "occupation".into(),
            "--beta".into(),
            "1".into(),
            "--mu".into(),
            "-0.5".into(),
            "--delta".into(),
            "0.7".into(),
            "--grid".into(),
            "0:4:17".into(),
        ],
        vec![
            "eos".into(),
            "--delta".into(),
            "0.5".into(),
            "--grid".into(),
            "1e-4:1e-1:9:log".into(),
        ],
        vec!["virial".into(), "--grid".into(), "0:1:5".into()],
        vec!["blackhole-preset".into(), "--delta".into(), "0.25".into()],
    ];
    for base in &command_sets {
        for format in ["csv", "json"] {
            let mut outputs = Vec::new();
            for run in 0..2 {
                let path = dir.path().join(format!("out_{run}.{format}"));
                let mut args: Vec<String> = base.clone();
                args.push("--output".into());
                args.push(format.into());
                args.push("--out".into());
                args.push(path.display().to_string());
                let arg_refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
                let out = qgas(&arg_refs);
                assert!(
                    out.status.success(),
                    "command {base:?} failed: {}",
                    String::from_utf8_lossy(&out.stderr)
                );
                outputs.push(std::fs::read(&path).unwrap());
            }
            assert_eq!(
                outputs[0], outputs[1],
                "non-deterministic output for {base:?} ({format})"
            );
        }
    }
}

#[test]
fn csv_and_json_carry_equal_values() {
    let csv = qgas(&["virial", "--grid", "0:1:5", "--output", "csv"]);
    let json = qgas(&["virial", "--grid", "0:1:5", "--output", "json"]);
    assert!(csv.status.success() && json.status.success());

    let csv_text = String::from_utf8(csv.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();

    let mut lines = csv_text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let mut csv_rows = 0;
    for (line, jrow) in lines.zip(rows) {
        for (col, cell) in header.iter().zip(line.split(',')) {
            let jval = &jrow[*col];
            if let Ok(x) = cell.parse::<f64>() {
                assert_eq!(
                    x,
                    jval.as_f64().unwrap(),
                    "column {col} differs between CSV and JSON"
                );
            } else if !cell.is_empty() {
                assert_eq!(cell, jval.as_str().unwrap(), "column {col}");
            } else {
                assert!(jval.is_null());
            }
        }
        csv_rows += 1;
    }
    assert_eq!(csv_rows, rows.len());
    assert_eq!(csv_rows, 5);
}

#[test]
fn informational_and_skipped_rows_do_not_fail() {
    // n_max = 1 starves the bosonic commutator interior (skipped rows) and
    // the literal-vs-adjoint row is always informational.
    let out = qgas(&["algebra-verify", "--caps", "1,1,1"]);
    assert!(out.status.success(), "exit must be 0");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("skipped (insufficient interior)"));
    assert!(text.contains("annihilation_literal_vs_adjoint"));
    assert!(text.contains("informational"));
    assert!(!text.contains(",fail,"));
}

#[test]
fn bad_inputs_exit_with_usage_error() {
    let out = qgas(&["virial", "--delta", "1.5"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = write_spectrum(dir.path(), "0.0 1\noops 2\n");
    let out = qgas(&["discrete", "--spectrum", &bad, "--beta", "1", "--grid", "0:1:3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "error must name the line: {err}");

    let out = qgas(&["discrete", "--spectrum", "/no/such/file", "--beta", "1", "--grid", "0:1:3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn forbidden_band_rows_are_flagged_not_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spectrum(dir.path(), "0.0 1\n1.0 1\n");
    // δ = e^{−2}, β = 1: bands (0,1) and (1,2).
    let out = qgas(&[
        "discrete",
        "--spectrum",
        &spec,
        "--beta",
        "1",
        "--delta",
        "0.1353352832366127",
        "--grid",
        "-1:3:9",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let flagged = text
        .lines()
        .filter(|l| l.contains("inadmissible(forbidden-band)"))
        .count();
    assert!(flagged >= 3, "band rows stay in the sweep:\n{text}");
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("mu,"))
        .count();
    assert_eq!(data_rows, 9, "sweep stays rectangular");
}

#[test]
fn condensation_rows_carry_the_critical_density() {
    let out = qgas(&["eos", "--delta", "0", "--grid", "1:4:4"]);
    assert!(out.status.success(), "condensation is a row, not a crash");
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text
        .lines()
        .find(|l| l.contains("condensation-regime"))
        .expect("supercritical row present");
    assert!(row.contains("2.612375348685488"), "critical value: {row}");
}

#[test]
fn ground_state_mode_requires_volume() {
    let out = qgas(&["eos", "--delta", "0", "--ground-state", "--grid", "1e-3:1e-2:3:log"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qgas(&[
        "eos",
        "--delta",
        "0",
        "--ground-state",
        "--v-lambda3",
        "100",
        "--grid",
        "1:4:4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // With a finite volume the ground level absorbs supercritical targets.
    assert!(!text.contains("condensation-regime"));
    assert!(text.lines().filter(|l| l.contains(",ok")).count() >= 4);
}

#[test]
fn si_units_add_pressure_column() {
    let out = qgas(&[
        "eos",
        "--delta",
        "0",
        "--units",
        "si",
        "--mass",
        "6.6465e-27",
        "--temperature",
        "4.2",
        "--grid",
        "1e-4:1e-3:3:log",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pressure_pa"));
}

#[test]
fn constants_file_overrides_si_conversions() {
    let dir = tempfile::tempdir().unwrap();
    let consts = dir.path().join("constants.txt");
    // Quadrupling h doubles λ, so pressure_pa scales by 1/8 at fixed nλ³.
    std::fs::write(
        &consts,
        "# overrides\nplanck_h = 2.65042806e-33\nboltzmann_k = 1.380649e-23\n",
    )
    .unwrap();
    let base = [
        "eos", "--delta", "0", "--units", "si", "--mass", "6.6465e-27", "--temperature", "4.2",
        "--grid", "1e-3:1e-3:1",
    ];
    let default_run = qgas(&base);
    let mut with_consts: Vec<&str> = base.to_vec();
    let cpath = consts.display().to_string();
    with_consts.extend(["--constants", &cpath]);
    let override_run = qgas(&with_consts);
    assert!(default_run.status.success() && override_run.status.success());

    let pressure = |out: &Output| -> f64 {
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let idx = header.iter().position(|c| *c == "pressure_pa").unwrap();
        lines.next().unwrap().split(',').nth(idx).unwrap().parse().unwrap()
    };
    let ratio = pressure(&default_run) / pressure(&override_run);
    assert!((ratio - 8.0).abs() <= 1e-9, "pressure ratio {ratio}");

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "planck_h = -1\n").unwrap();
    let bpath = bad.display().to_string();
    let mut bad_args: Vec<&str> = base.to_vec();
    bad_args.extend(["--constants", &bpath]);
    assert_eq!(qgas(&bad_args).status.code(), Some(2));
}

#[test]
fn matrix_dump_writes_triplets() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("mats");
    let out = qgas(&[
        "algebra-verify",
        "--caps",
        "2,2,4",
        "--dump-matrices",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dump.join("creation_0.txt")).unwrap();
    let first = text.lines().next().unwrap();
    let parts: Vec<&str> = first.split_whitespace().collect();
    assert_eq!(parts.len(), 3, "row col value format: {first}");
    parts[0].parse::<usize>().unwrap();
    parts[1].parse::<usize>().unwrap();
    parts[2].parse::<f64>().unwrap();
    assert!(dump.join("annihilation_literal_1.txt").exists());
}
