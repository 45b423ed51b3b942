use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qsl_core::cli::REPORT_COLUMNS;

fn qsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect()
}

fn column(row: &[String], name: &str) -> String {
    let i = REPORT_COLUMNS.iter().position(|c| *c == name).unwrap();
    row[i].clone()
}

fn num(row: &[String], name: &str) -> f64 {
    column(row, name).parse().unwrap()
}

#[test]
fn run_amplitude_damping() {
    let o = qsl(&[
        "run",
        "--model",
        "amplitude-damping",
        "--gamma",
        "1.0",
        "--tau",
        "1.386294",
        "--steps",
        "4000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), REPORT_COLUMNS.join(","));
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert!((num(&r[0], "path_length") - std::f64::consts::PI / 3.0).abs() < 1e-4);
    assert_eq!(column(&r[0], "verdict"), "attainable");
}

#[test]
fn run_spiral_is_unattainable() {
    let o = qsl(&[
        "run", "--model", "spiral", "--gamma", "0.5", "--omega", "5", "--tau", "2", "--steps", "8000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(column(&r[0], "verdict"), "unattainable");
    assert!(num(&r[0], "tau_av") < 2.0);
}

#[test]
fn frozen_precession() {
    let o = qsl(&[
        "run",
        "--model",
        "precession",
        "--omega",
        "0",
        "--tau",
        "1",
        "--steps",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(num(&r[0], "bures_angle"), 0.0);
    assert_eq!(num(&r[0], "path_length"), 0.0);
    assert_eq!(num(&r[0], "tau_min"), 0.0);
    assert_eq!(column(&r[0], "tau_op"), "");
}

#[test]
fn one_row_per_horizon_and_deterministic() {
    let args = ["run", "--model", "spiral", "--tau-list", "0.5,1,2", "--steps", "400"];
    let (a, b) = (qsl(&args), qsl(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(rows(&stdout(&a)).len(), 3);
}

#[test]
fn divergence_scan_rows() {
    let o = qsl(&[
        "divergence-scan",
        "--model",
        "spiral",
        "--gamma",
        "0.5",
        "--omega",
        "5",
        "--tau-list",
        "2,4,8,16",
        "--steps",
        "16000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let op: Vec<f64> = r.iter().map(|row| num(row, "tau_op")).collect();
    assert!(op.windows(2).all(|w| w[1] > w[0]), "{op:?}");
    assert!((num(&r[3], "tau_min") - num(&r[2], "tau_min")).abs() < 1e-3);

    let o = qsl(&[
        "divergence-scan",
        "--model",
        "amplitude-damping",
        "--tau-list",
        "2,4,8,16",
        "--steps",
        "8000",
    ]);
    assert!(rows(&stdout(&o))
        .iter()
        .all(|row| column(row, "verdict") == "attainable"));

    let o = qsl(&["divergence-scan", "--model", "spiral", "--tau-list", "3"]);
    assert_eq!(rows(&stdout(&o)).len(), 1);

    let o = qsl(&["divergence-scan", "--model", "spiral", "--tau-list", "4,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn epsilon_sweep_footer_and_saturation() {
    let o = qsl(&[
        "epsilon-sweep",
        "--model",
        "pure-dephasing",
        "--tau",
        "50",
        "--steps",
        "20000",
        "--eps-list",
        "0.6,1e-3,1e-18",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "epsilon,time,saturated");
    assert!(text.lines().last().unwrap().starts_with("# floor_epsilon="));
    let r = rows(&text);
    assert_eq!(r[0][1].parse::<f64>().unwrap(), 0.0);
    assert_eq!(r[2][2], "true");
}

#[test]
fn config_errors_exit_two_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let out_s = out.to_str().unwrap();
    for args in [
        vec!["run", "--model", "nope", "--tau", "1"],
        vec!["run", "--model", "spiral", "--tau", "1", "--steps", "8"],
        vec!["run", "--model", "spiral", "--tau", "-1"],
        vec!["run", "--model", "spiral", "--gamma", "-1", "--tau", "1"],
        vec!["run", "--model", "spiral", "--tau-list", "1,abc"],
        vec![
            "epsilon-sweep",
            "--model",
            "pure-dephasing",
            "--tau",
            "1",
            "--eps-list",
            "1e-3,1e-2",
        ],
    ] {
        let mut a = args.clone();
        a.extend(["--out", out_s]);
        let o = qsl(&a);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(!out.exists(), "{args:?} wrote output");
    }
}

#[test]
fn numerical_failure_exits_three() {
    // unitary custom model: no attractor for the stopping-time sweep
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("unitary.json");
    fs::write(&model, r#"{"dim": 2, "hamiltonian": [[[1,0],[0,0]],[[0,0],[-1,0]]]}"#).unwrap();
    let o = qsl(&["epsilon-sweep", "--model", model.to_str().unwrap(), "--tau", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dynamics"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let out = dir.path().join("out.csv");
    fs::write(
        &cfg,
        r#"{"model": "amplitude-damping", "tau": 1.0, "steps": 500, "gamma": 3.0}"#,
    )
    .unwrap();
    let o = qsl(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--gamma",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r = rows(&fs::read_to_string(&out).unwrap());
    assert_eq!(num(&r[0], "gamma"), 1.0);
    assert_eq!(num(&r[0], "steps"), 500.0);

    fs::write(&cfg, r#"{"model": "spiral", "bogus": 1}"#).unwrap();
    let o = qsl(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn custom_model_and_matrix_init() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("decay.json");
    let init = dir.path().join("init.json");
    fs::write(
        &model,
        r#"{"dim": 2, "hamiltonian": [[[0,0],[0,0]],[[0,0],[0,0]]],
            "jumps": [{"rate": 1.0, "matrix": [[[0,0],[1,0]],[[0,0],[0,0]]]}]}"#,
    )
    .unwrap();
    fs::write(&init, r#"{"matrix": [[[0,0],[0,0]],[[0,0],[1,0]]]}"#).unwrap();
    let o = qsl(&[
        "run",
        "--model",
        model.to_str().unwrap(),
        "--init",
        init.to_str().unwrap(),
        "--tau",
        "1.3862943611198906",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&stdout(&o));
    assert!((num(&r[0], "path_length") - std::f64::consts::PI / 3.0).abs() < 1e-4);
    assert_eq!(column(&r[0], "gamma"), "");
}

#[test]
fn bloch_init_and_mixed_start() {
    let o = qsl(&[
        "run",
        "--model",
        "pure-dephasing",
        "--init",
        "0.6,0,0",
        "--tau",
        "1",
        "--steps",
        "200",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(column(&r[0], "init"), "0.6,0,0");
    assert_eq!(column(&r[0], "tau_op"), "");
}

#[test]
fn verify_and_models() {
    let o = qsl(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(text.contains("fuchs-van-de-graaf (100 checks)"));
    assert!(text.contains("geodesic-collapse"));

    let o = qsl(&["models"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in qsl_core::dynamics::MODEL_NAMES {
        assert!(text.contains(name));
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_qsl")).exists());
}
