use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const MINIMAL: &str = r#"model = "bi_quadratic"
n_modes = 32

[params]
delta = 0.5
beta = 0.0

[initial]
f = { preset = "single_mode", k = 1, amplitude = 1e-3 }

[stepping]
dt = 0.01
t_final = 2.0

[output]
cadence = 10
formats = ["csv", "binary", "text"]
"#;

fn dampwave(args: &[&str], root: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dampwave"))
        .args(args)
        .env("DAMPWAVE_OUTPUT_ROOT", root)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn minimal_run_writes_all_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "minimal.toml", MINIMAL);
    let out = dampwave(&["run", cfg.to_str().unwrap()], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let dir = tmp.path().join("runs/minimal");
    let csv = fs::read_to_string(dir.join("diagnostics.csv")).unwrap();
    assert!(csv.starts_with("# dampwave diagnostics, format_version = 1\n"));
    assert!(csv.contains("# status = completed\n"));
    assert!(csv.contains("#   delta = 0.5\n"));
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "t,A0_f,A0_ft,H2,H4,H6,E,D,I1,I2,I3,I4,I5,I6,residual");
    // 200 steps at cadence 10, plus t = 0.
    assert_eq!(data_lines(&csv).len(), 21);

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["status"]["status"], "completed");
    assert_eq!(summary["a0_decay"]["target_rate"], 0.5);
    assert!(summary["a0_decay"]["fit"]["rate"].as_f64().unwrap() > 0.0);

    let snaps = dir.join("snapshots");
    let f = fs::read(snaps.join("snap_0000_f.bin")).unwrap();
    assert_eq!(f.len(), 32 * 24);
    assert!(snaps.join("snap_0001_ft.bin").exists());
    assert!(snaps.join("snap_0001.json").exists());
    assert!(snaps.join("snap_0000.txt").exists());
}

#[test]
fn zero_final_time_gives_one_row() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "zero.toml", &MINIMAL.replace("t_final = 2.0", "t_final = 0.0"));
    let out = dampwave(&["run", cfg.to_str().unwrap()], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(tmp.path().join("runs/zero/diagnostics.csv")).unwrap();
    let rows = data_lines(&csv);
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("0,"));
}

#[test]
fn nonpositive_delta_is_rejected_with_its_line() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.toml", &MINIMAL.replace("delta = 0.5", "delta = -1.0"));
    let out = dampwave(&["run", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.toml:5:"), "{err}");
    assert!(err.contains("delta"), "{err}");
    assert!(!tmp.path().join("runs/bad").exists());
}

#[test]
fn guard_trip_exits_with_three() {
    let tmp = tempfile::tempdir().unwrap();
    let body = MINIMAL
        .replace("n_modes = 32", "n_modes = 16")
        .replace("amplitude = 1e-3 }", "amplitude = 1e-3 }\nft = { preset = \"single_mode\", k = 7, amplitude = 1.0 }");
    let cfg = write_config(tmp.path(), "coarse.toml", &body);
    let out = dampwave(&["run", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
    let csv = fs::read_to_string(tmp.path().join("runs/coarse/diagnostics.csv")).unwrap();
    assert!(csv.contains("# status = guard_tripped\n"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dampwave(&["verify", "nonsense"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("operators"));
}

#[test]
fn operator_suite_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dampwave(&["verify", "operators"], tmp.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("PASS"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn inequality_suite_reports_failure() {
    let tmp = tempfile::tempdir().unwrap();
    let out = dampwave(&["verify", "inequality"], tmp.path());
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let body = MINIMAL.replace(
        "f = { preset = \"single_mode\", k = 1, amplitude = 1e-3 }",
        "f = { preset = \"random_smooth\", amplitude = 1e-2, decay = 2.0, seed = 9 }",
    );
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let root = tmp.path().join(name);
        fs::create_dir_all(&root).unwrap();
        let cfg = write_config(tmp.path(), "same.toml", &body);
        let out = dampwave(&["run", cfg.to_str().unwrap()], &root);
        assert!(out.status.success());
        let dir = root.join("runs/same");
        outputs.push([
            fs::read(dir.join("diagnostics.csv")).unwrap(),
            fs::read(dir.join("summary.json")).unwrap(),
            fs::read(dir.join("snapshots/snap_0001_f.bin")).unwrap(),
        ]);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn sweep_runs_each_config_into_its_own_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let cfgs = tmp.path().join("cfgs");
    fs::create_dir_all(&cfgs).unwrap();
    for (name, delta) in [("d1", "0.5"), ("d2", "1.0"), ("d3", "2.0")] {
        write_config(&cfgs, &format!("{name}.toml"), &MINIMAL.replace("delta = 0.5", &format!("delta = {delta}")));
    }
    let pattern = format!("{}/*.toml", cfgs.display());
    let out = dampwave(&["sweep", &pattern, "--jobs", "2"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["d1", "d2", "d3"] {
        assert!(tmp.path().join("runs").join(name).join("summary.json").exists());
    }
}

#[test]
fn sweep_rejects_colliding_directories() {
    let tmp = tempfile::tempdir().unwrap();
    let body = MINIMAL.replace("[output]", "[output]\ndirectory = \"shared\"");
    write_config(tmp.path(), "x.toml", &body);
    write_config(tmp.path(), "y.toml", &body);
    let pattern = format!("{}/*.toml", tmp.path().display());
    let out = dampwave(&["sweep", &pattern], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("both write to"));
}
