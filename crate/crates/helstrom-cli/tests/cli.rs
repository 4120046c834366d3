//! End-to-end tests of the `helstrom` binary: exit codes, file formats,
//! configuration layering, and CSV round-trips.

#![allow(clippy::excessive_precision)] // frozen 17-digit oracle constants

use std::path::Path;
use std::process::{Command, Output};

use helstrom_cli::grid::{run_grid, GridSpec, CSV_HEADER};
use helstrom_cli::DimMode;
use tempfile::TempDir;

fn helstrom() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_helstrom"));
    // Isolate from any ambient configuration.
    cmd.env_remove("HELSTROM_DIM")
        .env_remove("HELSTROM_JOBS")
        .env_remove("HELSTROM_EIG_TOL")
        .env_remove("HELSTROM_CONFIG");
    cmd
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn point_degenerate_and_analytic_values() {
    let out = helstrom()
        .args(["point", "--x", "0", "--p", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("pe_pure  : 5.0000000000000000e-1"), "{text}");
    assert!(text.contains("i_gain   : 0.0000000000000000e0"), "{text}");

    let out = helstrom()
        .args(["point", "--x", "1", "--p", "0", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let pe_pure = v["pure"]["pe"].as_f64().unwrap();
    assert!((pe_pure - 4.60007036958870463e-3).abs() < 1e-8);
    assert_eq!(v["i_gain"].as_f64().unwrap(), 0.0);
    assert_eq!(v["dim_used"].as_u64().unwrap(), 50);
}

#[test]
fn point_oracle_agrees_with_truncated_values() {
    let out = helstrom()
        .args(["point", "--x", "1", "--p", "1", "--oracle", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let oracle = &v["oracle"];
    assert!(oracle["pure_deviation"].as_f64().unwrap().abs() < 1e-8);
    assert!(oracle["mixed_deviation"].as_f64().unwrap().abs() < 1e-8);
}

#[test]
fn exit_codes_name_the_failure_class() {
    // Unknown flag: usage error from clap.
    let out = helstrom().args(["point", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Non-finite displacement: usage error.
    let out = helstrom()
        .args(["point", "--x", "NaN", "--p", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Conflicting dim flags: usage error.
    let out = helstrom()
        .args(["point", "--x", "1", "--p", "1", "--dim", "50", "--auto-dim", "1e-12"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Ill-conditioned Gram oracle on request: numerical failure.
    let out = helstrom()
        .args(["point", "--x", "1", "--p", "1e-9", "--oracle"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("ill-conditioned"), "{err}");

    // Unsound truncation: numerical failure.
    let out = helstrom()
        .args(["point", "--x", "3", "--p", "3", "--dim", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Unwritable output path: I/O failure.
    let out = helstrom()
        .args([
            "grid",
            "--x-range",
            "0:1:2",
            "--p-range",
            "0:1:2",
            "--dim",
            "20",
            "--out",
            "/nonexistent-dir/surface.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn grid_csv_layout_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("surface.csv");
    let out = helstrom()
        .args([
            "grid",
            "--x-range",
            "0:2:3",
            "--p-range",
            "0:1:4",
            "--dim",
            "30",
            "--jobs",
            "2",
            "--out",
        ])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(!text.contains('\r'), "CRLF leaked into the data file");
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER);
    let data_lines: Vec<&str> = lines.collect();
    assert_eq!(data_lines.len(), 12);

    // Re-parse and compare bit-for-bit with an in-process run.
    let spec = GridSpec {
        x_min: 0.0,
        x_max: 2.0,
        p_min: 0.0,
        p_max: 1.0,
        x_steps: 3,
        p_steps: 4,
        dim_mode: DimMode::Fixed(30),
        ..GridSpec::default_surface()
    };
    let (rows, _) = run_grid(&spec, 1).unwrap();
    for (line, row) in data_lines.iter().zip(rows.iter()) {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let expected = [
            row.x, row.p, row.pe_pure, row.pe_mixed, row.i_pure, row.i_mixed, row.i_gain,
        ];
        for (got, want) in fields.iter().zip(expected.iter()) {
            assert_eq!(got.to_bits(), want.to_bits(), "line {line}");
        }
    }
}

#[test]
fn single_cell_grid_at_the_origin() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("one.csv");
    let out = helstrom()
        .args([
            "grid", "--x-range", "0:0:1", "--p-range", "0:0:1", "--dim", "10", "--out",
        ])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let fields: Vec<f64> = lines[1].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields[2], 0.5); // pe_pure
    assert_eq!(fields[3], 0.5); // pe_mixed
    assert_eq!(fields[4], 0.0); // i_pure
    assert_eq!(fields[5], 0.0); // i_mixed
    assert_eq!(fields[6], 0.0); // i_gain
}

#[test]
fn grid_manifest_sidecar_carries_timestamps_data_file_does_not() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("surface.json");
    let out = helstrom()
        .args([
            "grid",
            "--x-range",
            "0:1:2",
            "--p-range",
            "0:1:2",
            "--dim",
            "25",
            "--format",
            "json",
            "--out",
        ])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let data: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(data["rows"].as_array().unwrap().len(), 4);
    assert_eq!(data["manifest"]["cell_count"].as_u64().unwrap(), 4);
    assert_eq!(data["manifest"]["dim_used"].as_u64().unwrap(), 25);
    assert!(data["manifest"].get("started_at").is_none());
    assert!(data["manifest"].get("finished_at").is_none());

    let sidecar = Path::new(&format!("{}.manifest.json", out_path.display())).to_path_buf();
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert!(manifest["started_at"].is_string());
    assert!(manifest["finished_at"].is_string());
    assert_eq!(manifest["tool_version"].as_str().unwrap(), helstrom_cli::TOOL_VERSION);
    assert_eq!(manifest["spec"]["x_steps"].as_u64().unwrap(), 2);
}

#[test]
fn environment_and_config_file_layering() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "dim=23\n").unwrap();
    let out_path = dir.path().join("g.csv");

    // Config file applies when nothing else is set.
    let out = helstrom()
        .env("HELSTROM_CONFIG", &conf)
        .args(["grid", "--x-range", "0:1:2", "--p-range", "0:1:2", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(format!("{}.manifest.json", out_path.display())).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["dim_used"].as_u64().unwrap(), 23);

    // Environment beats the file.
    let out = helstrom()
        .env("HELSTROM_CONFIG", &conf)
        .env("HELSTROM_DIM", "27")
        .args(["grid", "--x-range", "0:1:2", "--p-range", "0:1:2", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(format!("{}.manifest.json", out_path.display())).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["dim_used"].as_u64().unwrap(), 27);

    // Flags beat the environment.
    let out = helstrom()
        .env("HELSTROM_CONFIG", &conf)
        .env("HELSTROM_DIM", "27")
        .args([
            "grid", "--x-range", "0:1:2", "--p-range", "0:1:2", "--dim", "31", "--out",
        ])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(format!("{}.manifest.json", out_path.display())).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["dim_used"].as_u64().unwrap(), 31);

    // A malformed environment value is a usage error.
    let out = helstrom()
        .env("HELSTROM_EIG_TOL", "tight")
        .args(["point", "--x", "1", "--p", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn converge_reports_oracle_deltas() {
    let out = helstrom()
        .args(["converge", "--x", "1", "--p", "1", "--dims", "10,20,30,40,50"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("dim"), "{text}");

    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("conv.json");
    let out = helstrom()
        .args([
            "converge", "--x", "1", "--p", "1", "--dims", "10,50", "--format", "json", "--out",
        ])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let last = &rows[1];
    assert_eq!(last["dim"].as_u64().unwrap(), 50);
    assert!(last["delta_mixed_gram"].as_f64().unwrap().abs() < 1e-8);

    // Descending dims are rejected as a usage error.
    let out = helstrom()
        .args(["converge", "--x", "1", "--p", "1", "--dims", "50,10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vacuum_converge_is_flat() {
    let out = helstrom()
        .args(["converge", "--x", "0", "--p", "0", "--dims", "5,15,25"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    let half = "5.0000000000000000e-1";
    assert_eq!(text.matches(half).count(), 6, "{text}");
}
