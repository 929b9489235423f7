use std::path::Path;
use std::process::{Command, Output};

fn pcsqueeze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcsqueeze"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pcsqueeze(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn field(report: &serde_json::Value, key: &str) -> f64 {
    report[key]["value"].as_f64().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn design_reproduces_the_default_source() {
    let rep: serde_json::Value = serde_json::from_str(&stdout(&["design"])).unwrap();
    let rel = |k: &str, want: f64| (field(&rep, k) / want - 1.0).abs();
    assert!(rel("r", 1.84) < 0.01);
    assert!((field(&rep, "squeezing_dB") - 15.9).abs() < 0.1);
    assert!(rel("alpha", 1.00) < 0.01);
    assert!(rel("alpha_prime", 0.458) < 5e-3);
    assert!(rel("W_out", 2.31e-9) < 0.03);
    for key in [
        "A", "dtau1", "T1", "omega_s", "lambda_s", "k_s", "gamma", "mean_n",
    ] {
        assert!(rep[key]["unit"].is_string(), "{key}");
    }
    assert_eq!(rep["scenario"]["n_laps"], 1000);
}

#[test]
fn scenario_files_fill_in_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let kv = write(dir.path(), "zero.txt", "# no pump\nw_pump = 0\n");
    let rep: serde_json::Value =
        serde_json::from_str(&stdout(&["design", "--scenario", &kv])).unwrap();
    assert_eq!(field(&rep, "r"), 0.0);
    assert_eq!(field(&rep, "alpha_prime"), field(&rep, "alpha"));
    assert!(field(&rep, "W_out") > 0.0);
    assert_eq!(rep["scenario"]["d"], 5e-6);

    let json = write(dir.path(), "s.json", r#"{"n_laps": 500}"#);
    let rep: serde_json::Value =
        serde_json::from_str(&stdout(&["design", "--scenario", &json])).unwrap();
    assert_eq!(rep["scenario"]["n_laps"], 500);
    assert_eq!(rep["scenario"]["w_pump"], 1e-3);

    let bad = write(dir.path(), "bad.txt", "pump_power = 1\n");
    let out = pcsqueeze(&["design", "--scenario", &bad]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scenario key"));
}

#[test]
fn bands_rows_and_signal_frequency() {
    let csv = stdout(&["bands", "--k-points", "2", "--bands", "1"]);
    assert_eq!(csv.lines().count(), 3);

    let csv = stdout(&["bands"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("k,band,omega,omega_normalized,vg_over_c")
    );
    let (norm, _) = lines
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|f| f[1] == "4")
        .map(|f| {
            (
                f[3].parse::<f64>().unwrap(),
                (f[4].parse::<f64>().unwrap() - 0.05).abs(),
            )
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert!((norm / 1.19 - 1.0).abs() < 0.01, "{norm}");
}

#[test]
fn trotter_rows_converge() {
    let rows = |extra: &[&str]| -> Vec<f64> {
        let mut args = vec!["trotter", "--n-list", "8..512"];
        args.extend_from_slice(extra);
        stdout(&args)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    let main = rows(&["--alpha", "1", "--r", "0.5"]);
    assert_eq!(main.len(), 7);
    assert!(main.windows(2).all(|w| w[1] < w[0]));
    assert!(*main.last().unwrap() <= 1e-4);
    assert!(rows(&["--alpha", "1", "--r", "0"])
        .iter()
        .all(|&v| v <= 1e-10));
    assert!(rows(&["--alpha", "0", "--r", "0.5"])
        .iter()
        .all(|&v| v <= 1e-10));
}

#[test]
fn entangle_outputs() {
    let csv = stdout(&["entangle", "--grid", "0:0:1,0:1:3"]);
    assert_eq!(csv.lines().next(), Some("r,alpha_prime,criterion,stable"));
    for line in csv.lines().skip(1) {
        let v: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!((v - 4.0).abs() < 1e-6);
    }

    let point: serde_json::Value =
        serde_json::from_str(&stdout(&["entangle", "--point", "0.8,0.5"])).unwrap();
    let oracle = pcsqueeze::entanglement::oracle_criterion(0.8, 0.5, 60).unwrap();
    assert!((point["value"].as_f64().unwrap() - oracle).abs() < 1e-4);
    for key in [
        "a_dag_mean",
        "n_mean",
        "ab_corr",
        "cutoff",
        "reference",
        "stable",
        "leakage",
    ] {
        assert!(!point[key].is_null(), "{key}");
    }

    // instability is reported, not an error
    let out = pcsqueeze(&["entangle", "--grid", "1.5:1.5:1,0.5:1.2:2"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",false")));
}

#[test]
fn outputs_are_deterministic_and_guarded() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.csv");
    let p = path.to_str().unwrap();
    let args = ["entangle", "--grid", "0:1.2:5,0:1.2:5", "--out", p];
    assert!(pcsqueeze(&args).status.success());
    let first = std::fs::read(&path).unwrap();

    let again = pcsqueeze(&args);
    assert!(!again.status.success());
    assert!(String::from_utf8_lossy(&again.stderr).contains("--force"));

    let mut forced = args.to_vec();
    forced.push("--force");
    assert!(pcsqueeze(&forced).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), first);

    for cmd in [
        &["bands", "--k-points", "20"][..],
        &["design"],
        &["trotter", "--n-list", "4,8"],
    ] {
        assert_eq!(stdout(cmd), stdout(cmd));
    }
}

#[test]
fn bad_arguments_fail() {
    assert!(!pcsqueeze(&["entangle", "--grid", "0:1"]).status.success());
    assert!(!pcsqueeze(&["trotter", "--n-list", "0..4"]).status.success());
    assert!(!pcsqueeze(&["frobnicate"]).status.success());
    assert!(pcsqueeze(&["--help"]).status.success());
}
