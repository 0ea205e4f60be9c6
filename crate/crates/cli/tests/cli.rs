//! End-to-end checks of the binary: exit codes, flag/file precedence, CSV
//! schema, byte determinism and round-tripping.

use std::path::Path;
use std::process::{Command, Output};

fn lfade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfade"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn example2_writes_error_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e2.csv");
    let result = lfade(&["--preset", "example2", "--output", out.to_str().unwrap()]);
    assert!(result.status.success(), "{}", stderr(&result));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,t,u_numeric,u_exact,abs_error");
    // m = 3 nodes -> 4 rows
    assert_eq!(lines.count(), 4);
    assert!(text.ends_with('\n'));
    assert!(!text.contains('\r'));
    let summary = String::from_utf8_lossy(&result.stdout).into_owned();
    assert!(summary.contains("m1="), "summary: {summary}");
}

#[test]
fn example1_has_no_exact_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e1.csv");
    let result = lfade(&[
        "--preset",
        "example1",
        "--dt",
        "0.01",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "x,t,u_numeric");
}

#[test]
fn csv_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    let grid = "0.1,0.25,0.5,0.75,0.9";
    for out in [&out_a, &out_b] {
        let result = lfade(&[
            "--preset",
            "example2",
            "--eval-grid",
            grid,
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(result.status.success(), "{}", stderr(&result));
    }
    let bytes_a = std::fs::read(&out_a).unwrap();
    let bytes_b = std::fs::read(&out_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "identical configs must write identical bytes");

    // 17 significant digits round-trip bit-exactly through parse
    let text = String::from_utf8(bytes_a).unwrap();
    for line in text.lines().skip(1) {
        for field in line.split(',') {
            let value: f64 = field.parse().unwrap();
            let reprinted = format!("{value:.16e}");
            assert_eq!(
                reprinted.parse::<f64>().unwrap().to_bits(),
                value.to_bits()
            );
        }
    }
}

#[test]
fn invalid_alpha_exits_2_naming_the_field() {
    let result = lfade(&["--preset", "example1", "--alpha", "3.0"]);
    assert_eq!(result.status.code(), Some(2));
    let message = stderr(&result);
    assert!(message.contains("alpha"), "message: {message}");
}

#[test]
fn invalid_theta_and_m_exit_2() {
    let result = lfade(&["--preset", "example1", "--theta", "0.9"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("theta"));

    let result = lfade(&["--preset", "example2", "--m", "1"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("m"));

    // t_final not a multiple of dt
    let result = lfade(&["--preset", "example2", "--dt", "0.3", "--t-final", "1.0"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn malformed_number_exits_2() {
    let result = lfade(&["--preset", "example2", "--alpha", "fast"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn config_file_layering() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("layered.csv");
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# manufactured run\npreset = example2\ntheta = 0.3\nalpha = 1.6\n",
    )
    .unwrap();
    // flag overrides the file value for theta
    let result = lfade(&[
        "--config",
        cfg.to_str().unwrap(),
        "--theta",
        "0.0",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let summary = String::from_utf8_lossy(&result.stdout).into_owned();
    assert!(summary.contains("alpha=1.6"), "summary: {summary}");
    assert!(summary.contains("theta=0"), "summary: {summary}");
}

#[test]
fn unknown_config_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "alpha = 1.5\nspeed = 9\n").unwrap();
    let result = lfade(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("speed"));
}

#[test]
fn unwritable_output_exits_1() {
    let result = lfade(&[
        "--preset",
        "example2",
        "--output",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(result.status.code(), Some(1));
}

#[test]
fn eval_grid_outside_domain_rejected() {
    let result = lfade(&["--preset", "example2", "--eval-grid", "0.5,1.5"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("eval_grid"));
}

#[test]
fn sweep_writes_one_file_per_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let result = lfade(&[
        "--preset",
        "example2",
        "--theta",
        "0.1",
        "--sweep",
        "1.4,1.6",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    assert!(Path::new(&dir.path().join("sweep-alpha1.4.csv")).exists());
    assert!(Path::new(&dir.path().join("sweep-alpha1.6.csv")).exists());
    let summary = String::from_utf8_lossy(&result.stdout).into_owned();
    assert_eq!(summary.lines().count(), 2);
}

#[test]
fn example2_rejects_d_override() {
    let result = lfade(&["--preset", "example2", "--d", "2.0"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains('d'));
}
