//! CLI acceptance: artifact determinism across runs and parallelism
//! degrees, plus the exit-status contract.

use std::path::Path;
use std::process::Command;

fn qla() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qla"))
}

fn read_artifacts(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn criterion_10_reproduce_all_is_byte_identical() {
    let base = tempfile::tempdir().unwrap();
    let dirs: Vec<_> = (0..3).map(|i| base.path().join(format!("run{i}"))).collect();
    for (i, dir) in dirs.iter().enumerate() {
        let mut cmd = qla();
        cmd.args([
            "reproduce-all",
            "--seed",
            "7",
            "--trials",
            "2000",
            "--points",
            "8",
            "--out-dir",
        ])
        .arg(dir);
        // the third run pins the worker pool to one thread
        if i == 2 {
            cmd.env("RAYON_NUM_THREADS", "1");
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "run {i}: {:?}", out);
    }
    let a = read_artifacts(&dirs[0]);
    let b = read_artifacts(&dirs[1]);
    let c = read_artifacts(&dirs[2]);
    let names: Vec<&String> = a.iter().map(|(n, _)| n).collect();
    assert!(names.contains(&&"table2.csv".to_string()));
    assert!(names.contains(&&"fig7_threshold.csv".to_string()));
    assert!(names.contains(&&"fig8_spacing.csv".to_string()));
    let identical = a == b && b == c;
    println!(
        "[{}] criterion 10: reproduce-all artifacts byte-identical across runs and thread counts",
        if identical { "PASS" } else { "FAIL" }
    );
    assert!(identical);
}

#[test]
fn exit_status_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qla()
        .args(["estimate-shor", "--bits", "128", "--out-dir"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = qla()
        .args(["threshold", "--trials", "0", "--out-dir"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "validation failure is status 1");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error: "), "machine-parsable error line");
    assert_eq!(err.trim_end().lines().count(), 1);

    let out = qla().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2), "usage error is status 2");
}

#[test]
fn estimate_shor_reports_published_row() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qla()
        .args(["estimate-shor", "--bits", "128", "--out-dir"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    let days = report["report"]["runtime_days"].as_f64().unwrap();
    assert!((days - 0.9).abs() / 0.9 <= 0.05, "days {days}");
    let csv = std::fs::read_to_string(tmp.path().join("estimate_shor_128.csv")).unwrap();
    assert!(csv.contains("128,37971,63729,115033,0.11,0.9"));
}

#[test]
fn custom_profile_via_env_var() {
    let tmp = tempfile::tempdir().unwrap();
    let profile_path = tmp.path().join("custom.toml");
    std::fs::write(
        &profile_path,
        r#"
[times]
single_gate_us = 1.0
double_gate_us = 10.0
measure_us = 100.0
movement_per_cell_us = 0.01
split_us = 10.0
cooling_us = 1.0
memory_lifetime_s = 10.0

[failure_probabilities]
single_gate = 1e-8
double_gate = 1e-7
measure = 1e-8
move_per_cell = 1e-6
"#,
    )
    .unwrap();
    let out = qla()
        .env("QLA_PROFILE_PATH", &profile_path)
        .args(["params", "show", "--out-dir"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"profile\":\"custom\""));
    assert!(text.contains("p_double_gate,1e-7,probability"));
}

#[test]
fn workload_file_schedule() {
    let tmp = tempfile::tempdir().unwrap();
    let wl = tmp.path().join("workload.txt");
    std::fs::write(&wl, "# demo\n0 0 3 4 2 0\n1 1 0 2 1 5\n").unwrap();
    let out = qla()
        .args(["schedule", "--workload", "file", "--workload-file"])
        .arg(&wl)
        .args(["--out-dir"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let trace = std::fs::read_to_string(tmp.path().join("schedule_trace.csv")).unwrap();
    assert_eq!(trace.lines().filter(|l| !l.starts_with('#')).count(), 3); // header + 2
}
