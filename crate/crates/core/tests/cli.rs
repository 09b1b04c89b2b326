use std::process::{Command, Output};

fn fracwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracwave")).args(args).output().expect("spawn fracwave")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["coord", "re", "im", "abs2", "err_est", "method"]);
    rdr.records().map(|r| r.unwrap().iter().map(str::to_owned).collect()).collect()
}

#[test]
fn delta_grid_writes_one_row_per_point() {
    let out = fracwave(&[
        "delta", "--alpha", "1.5", "--theta", "0.25", "--energy", "-1", "--gamma", "1", "--hbar", "1", "--c-alpha", "1",
        "--grid", "-3:3:121", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 121);
    assert_eq!(rows[0][0].parse::<f64>().unwrap(), -3.0);
    assert_eq!(rows[60][0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(rows[120][0].parse::<f64>().unwrap(), 3.0);
    for r in &rows {
        let v: Vec<f64> = r[..5].iter().map(|s| s.parse().unwrap()).collect();
        assert!(v.iter().all(|x| x.is_finite()));
    }
}

#[test]
fn classical_time_factor_has_unit_modulus() {
    let out = fracwave(&["time", "--beta", "1", "--energy", "-0.5", "--hbar", "1", "--grid", "0:6.2832:100"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 100);
    for r in rows {
        let abs2: f64 = r[3].parse().unwrap();
        assert!((abs2.sqrt() - 1.0).abs() < 1e-10, "{r:?}");
    }
}

#[test]
fn json_carries_metadata_and_points() {
    let out = fracwave(&["linear", "--alpha", "1.5", "--theta", "0.2", "--energy", "1", "--grid", "-1:1:3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["command"], "linear");
    assert_eq!(doc["meta"]["config"]["theta"], 0.2);
    assert_eq!(doc["meta"]["grid"]["count"], 3);
    assert!(doc["meta"]["version"].is_string());
    let points = doc["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    for p in points {
        for key in ["coord", "re", "im", "abs2", "err_est", "method"] {
            assert!(!p[key].is_null(), "missing {key}");
        }
    }
}

#[test]
fn csv_and_json_agree_bit_for_bit() {
    let args = ["ml", "--beta", "0.5", "--phase", "3.141592653589793", "--grid", "0:4:9"];
    let csv_out = fracwave(&args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json_out = fracwave(&json_args);
    let doc: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    for (row, p) in csv_rows(&csv_out).iter().zip(doc["points"].as_array().unwrap()) {
        for (i, key) in ["coord", "re", "im", "abs2", "err_est"].iter().enumerate() {
            let a: f64 = row[i].parse().unwrap();
            assert_eq!(a.to_bits(), p[key].as_f64().unwrap().to_bits(), "{key}");
        }
        assert_eq!(row[5], p["method"].as_str().unwrap());
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["full", "--potential", "linear", "--alpha", "1.75", "--theta", "-0.2", "--energy", "0.5", "--beta", "0.7", "--time", "1.5", "--grid", "-2:2:41"];
    let a = fracwave(&args);
    let b = fracwave(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_parameters_exit_2_with_diagnostic() {
    let out = fracwave(&["delta", "--alpha", "1.5", "--theta", "0.75", "--energy", "-1", "--grid", "-1:1:5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("|theta| <= min(alpha, 2 - alpha)"), "{msg}");

    for args in [
        vec!["time", "--energy", "1", "--grid", "0:1:3", "--tol", "0.5"],
        vec!["time", "--energy", "1", "--grid", "0:1:100001"],
        vec!["time", "--energy", "1", "--grid", "0:1"],
        vec!["delta", "--alpha", "1.5", "--energy", "1", "--grid", "0:1:3"],
        vec!["delta", "--alpha", "1.5", "--energy", "-1", "--grid", "0:1:3", "--method", "series"],
        vec!["time", "--beta", "1.5", "--energy", "1", "--grid", "0:1:3"],
    ] {
        let out = fracwave(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn numerical_failure_exits_3() {
    // |z| = 1 sits on the radius of convergence of both residue series of
    // x/(1 + x)
    let out = fracwave(&["foxh", "--m", "1", "--n", "1", "--upper", "0,1", "--lower", "0,1", "--grid", "1:1:1", "--method", "series"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[numerical]"));
}

#[test]
fn unwritable_output_exits_4() {
    let out = fracwave(&["time", "--energy", "1", "--grid", "0:1:2", "--output", "/nonexistent-dir/out.csv"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("fracwave-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let args = ["time", "--beta", "0.6", "--energy", "-1", "--grid", "0:2:5"];
    let stdout = fracwave(&args).stdout;
    let mut with_file = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["--output", p]);
    let out = fracwave(&with_file);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
