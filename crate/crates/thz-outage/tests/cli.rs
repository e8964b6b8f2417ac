//! End-to-end tests of the `thz-outage` binary: config ingestion, the four
//! subcommands, CSV determinism, the resolved-config sidecar, and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thz-outage"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thz-outage-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

const SWEEP_CONFIG: &str = r#"
snr_threshold_db = 0.0

[link1]
tx_power_over_noise_db = 45.0
[link1.misalignment]
beam_width_m = 0.05
jitter_sigma_m = 0.02

[link2]
tx_power_over_noise_db = 45.0

[sweep]
methods = ["closed_form", "quadrature", "monte_carlo"]
[sweep.axis1]
parameter = "snr_threshold_db"
start = -5.0
stop = 10.0
points = 4
scale = "db"
"#;

#[test]
fn point_on_empty_config_uses_defaults() {
    let dir = tempdir("point");
    fs::write(dir.join("scenario.toml"), "").unwrap();
    let out = run(
        &["point", "--config", "scenario.toml", "--method", "quad"],
        &dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("op_quadrature"), "stdout: {stdout}");
    // Default BM-free scenario at 50 dB budgets: OP ~ 1.4e-8.
    let val: f64 = stdout
        .split('=')
        .nth(1)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(val > 1e-9 && val < 1e-7, "unexpected default OP {val}");
    // Sidecar echoes the fully-resolved configuration.
    let sidecar = fs::read_to_string(dir.join("run.resolved.toml")).unwrap();
    assert!(sidecar.contains("frequency_hz = 275000000000.0"));
    assert!(sidecar.contains("snr_threshold = 1.0"));
}

#[test]
fn point_rejects_non_integer_mu_for_closed_form() {
    let dir = tempdir("mu");
    fs::write(dir.join("scenario.toml"), "[link1]\nfading_mu = 2.5\n").unwrap();
    let out = run(
        &["point", "--config", "scenario.toml", "--method", "closed"],
        &dir,
    );
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("integer"), "stderr: {stderr}");
}

#[test]
fn sweep_writes_deterministic_csv_and_sidecar() {
    let dir = tempdir("sweep");
    fs::write(dir.join("sweep.toml"), SWEEP_CONFIG).unwrap();
    let args = [
        "sweep",
        "--config",
        "sweep.toml",
        "--out",
        "grid.csv",
        "--trials",
        "20000",
        "--seed",
        "11",
        "--chunks",
        "8",
    ];
    let out = run(&args, &dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv1 = fs::read(dir.join("grid.csv")).unwrap();

    let header = String::from_utf8(csv1.clone()).unwrap();
    let mut lines = header.lines();
    assert_eq!(
        lines.next().unwrap(),
        "snr_threshold_db,op_closed_form,op_quadrature,op_monte_carlo,mc_stderr,diagnostics"
    );
    assert_eq!(header.lines().count(), 5); // header + 4 grid points
    assert!(!header.contains('\r'), "CSV must use LF line endings");

    // Byte-identical rerun.
    let out = run(&args, &dir);
    assert!(out.status.success());
    let csv2 = fs::read(dir.join("grid.csv")).unwrap();
    assert_eq!(csv1, csv2);

    let sidecar = fs::read_to_string(dir.join("grid.resolved.toml")).unwrap();
    assert!(sidecar.contains("command = \"sweep\""));
    assert!(sidecar.contains("seed = 11"));
    assert!(sidecar.contains("parameter = \"snr_threshold_db\""));
}

#[test]
fn validate_passes_and_reports() {
    let dir = tempdir("validate");
    fs::write(dir.join("sweep.toml"), SWEEP_CONFIG).unwrap();
    let out = run(
        &[
            "validate",
            "--config",
            "sweep.toml",
            "--trials",
            "100000",
            "--out",
            "report.csv",
        ],
        &dir,
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "stdout: {stdout}");
    assert!(stdout.contains("verdict: PASS"), "stdout: {stdout}");
    assert!(stdout.contains("monte-carlo coverage"));
    assert!(stdout.contains("absorption forms"));

    let report = fs::read_to_string(dir.join("report.csv")).unwrap();
    assert!(report.starts_with("axis1,axis2,op_closed,op_quadrature"));
    assert_eq!(report.lines().count(), 5);
}

#[test]
fn absorption_table_spans_requested_band() {
    let dir = tempdir("absorption");
    let out = run(
        &[
            "absorption",
            "--out",
            "beta.csv",
            "--from-ghz",
            "275",
            "--to-ghz",
            "425",
            "--points",
            "31",
        ],
        &dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = fs::read_to_string(dir.join("beta.csv")).unwrap();
    assert_eq!(
        table.lines().next().unwrap(),
        "frequency_hz,beta_squared_per_m,beta_linear_detuning_per_m,in_band"
    );
    assert_eq!(table.lines().count(), 32);
    // Every row in-band; squared form strictly positive.
    for line in table.lines().skip(1) {
        assert!(line.ends_with(",true"));
        let beta_sq: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(beta_sq > 0.0);
    }
}

#[test]
fn schema_violations_surface_with_field_path() {
    let dir = tempdir("schema");
    fs::write(dir.join("bad.toml"), "[link1]\nfrequenzy_hz = 1.0\n").unwrap();
    let out = run(&["point", "--config", "bad.toml"], &dir);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("frequenzy_hz") || stderr.contains("unknown field"), "stderr: {stderr}");
}
