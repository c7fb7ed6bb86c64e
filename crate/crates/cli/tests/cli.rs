//! End-to-end checks of the binary: flag handling, config-file precedence,
//! output formats, and exit codes.

use std::io::Write;
use std::process::{Command, Output};

fn qotto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qotto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing field {key} in:\n{text}"))
        .to_string()
}

#[test]
fn cycle_at_baseline_is_an_engine() {
    let out = qotto(&[
        "cycle",
        "--bh",
        "10",
        "--bl",
        "6",
        "--j1",
        "10",
        "--j2",
        "10",
        "--k",
        "0.1",
        "--omega",
        "1",
        "--th",
        "3.5",
        "--measure",
        "e1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "regime"), "engine");
    let w_net: f64 = field(&text, "w_net").parse().unwrap();
    assert!(w_net > 0.0);
    let eta: f64 = field(&text, "eta").parse().unwrap();
    assert!((eta - 0.747062342325).abs() < 1e-9);
}

#[test]
fn cycle_with_equal_fields_has_zero_work_and_zero_eta() {
    let out = qotto(&["cycle", "--bh", "10", "--bl", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "w_net"), "0.00000000000e0");
    assert_eq!(field(&text, "eta"), "0.00000000000e0");
}

#[test]
fn cycle_json_reports_the_same_fields() {
    let out = qotto(&["cycle", "--bl", "6", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["regime"], "engine");
    assert_eq!(v["measure"], "e1");
    assert!(v["w_net"].as_f64().unwrap() > 0.0);
    assert!(v["eta"].as_f64().is_some());
}

#[test]
fn figure_fig2b_is_all_negative() {
    let out = qotto(&["figure", "fig2b"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let q_hot: f64 = f[9].parse().unwrap();
        let q_cold: f64 = f[11].parse().unwrap();
        let w_net: f64 = f[13].parse().unwrap();
        assert!(q_hot < 0.0 && q_cold < 0.0 && w_net < 0.0, "row: {line}");
        assert_eq!(f[16], "unphysical");
        rows += 1;
    }
    assert_eq!(rows, 100);
}

#[test]
fn sweep_flag_drives_the_axis() {
    let out = qotto(&["sweep", "--sweep", "b_low=6:8:3", "--bl", "99"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let first: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(first[0], "b_low");
    let b_low: f64 = first[1].parse().unwrap();
    assert_eq!(b_low, 6.0); // the axis overrides the --bl flag
}

#[test]
fn critical_rule_pins_b_low_to_half_j1() {
    let out = qotto(&["sweep", "--sweep", "j1=8:10:2", "--rule", "critical"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let b_low: f64 = f[1].parse().unwrap();
        let j1: f64 = f[3].parse().unwrap();
        assert_eq!(b_low, j1 / 2.0);
    }
}

#[test]
fn config_file_fills_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("engine.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# baseline overrides").unwrap();
    writeln!(f, "bl = 7").unwrap();
    writeln!(f, "j2 = 0").unwrap();
    writeln!(f, "measure = e1").unwrap();
    drop(f);

    let cfg = path.to_str().unwrap();
    let out = qotto(&["cycle", "--config", cfg]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "b_low"), "7.00000000000e0");
    assert_eq!(field(&text, "j2"), "0.00000000000e0");

    // explicit flag wins over the file value
    let out = qotto(&["cycle", "--config", cfg, "--bl", "6"]);
    let text = stdout(&out);
    assert_eq!(field(&text, "b_low"), "6.00000000000e0");
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "banana = 3\n").unwrap();
    let out = qotto(&["cycle", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = qotto(&[
        "sweep",
        "--sweep",
        "j2=0:10:3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("axis,b_low"));
    assert_eq!(written.lines().count(), 4);
}

#[test]
fn optimize_emits_the_reference_columns() {
    let out = qotto(&["optimize", "--bl-grid", "6:8:3", "--j1", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "b_low,b_high_star,w_max,eta_wmax,ratio,one_minus_ratio,one_minus_sqrt_ratio"
    );
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let b_low: f64 = f[0].parse().unwrap();
        let b_star: f64 = f[1].parse().unwrap();
        let ratio: f64 = f[4].parse().unwrap();
        let one_minus: f64 = f[5].parse().unwrap();
        assert!(b_star > b_low);
        assert!((ratio - b_low / b_star).abs() < 1e-9);
        assert!((one_minus - (1.0 - ratio)).abs() < 1e-9);
    }
}

#[test]
fn optimize_analytic_mode_runs() {
    let out = qotto(&[
        "optimize",
        "--bl-grid",
        "6:6:1",
        "--j1",
        "10",
        "--j2",
        "0",
        "--k",
        "0",
        "--analytic",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let w_max: f64 = row[2].parse().unwrap();
    assert!(w_max > 0.0);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let args = ["figure", "fig8"];
    let a = qotto(&args);
    let b = qotto(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_arguments_exit_one() {
    assert_eq!(qotto(&["cycle", "--bogus"]).status.code(), Some(1));
    assert_eq!(qotto(&["norainbow"]).status.code(), Some(1));
    assert_eq!(qotto(&["figure", "fig11"]).status.code(), Some(1));
    assert_eq!(qotto(&["sweep", "--sweep", "nope"]).status.code(), Some(1));
    assert_eq!(qotto(&["cycle", "--measure", "e2"]).status.code(), Some(1));
    // invalid physics surfaces as exit 1 too
    assert_eq!(qotto(&["cycle", "--j1", "-1"]).status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = qotto(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("selftest"));
}

#[test]
fn selftest_passes_and_prints_the_table() {
    let out = qotto(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("selftest: 12 passed, 0 failed"));
    assert_eq!(text.matches(" pass  ").count(), 12);
}
