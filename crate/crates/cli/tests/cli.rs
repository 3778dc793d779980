// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_annulus-cp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

/// Data rows of a CSV (after the metadata and header lines).
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(2)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn radial_ring_roots() {
    let v = json(&["roots", "--geometry", "ring", "--pol", "radial"]);
    let r: Vec<f64> = serde_json::from_value(v["results"]["roots_h_over_a"].clone()).unwrap();
    assert_eq!(r.len(), 2);
    assert!((r[0] - 0.360007).abs() < 1e-6);
    assert!((r[1] - 3.445344).abs() < 1e-6);
    let exact: Vec<f64> =
        serde_json::from_value(v["results"]["analytic_h_over_a"].clone()).unwrap();
    assert!((r[1] - exact[1]).abs() < 1e-10);
}

#[test]
fn threshold_at_right_angle() {
    let v = json(&["threshold", "--theta", "90deg"]);
    let b = v["results"]["thresholds"][0]["b_star"].as_f64().unwrap();
    assert!((b - 1.257).abs() < 0.005, "{b}");
    assert_eq!(v["results"]["thresholds"][0]["present_below"], true);
}

#[test]
fn coarse_verify_passes() {
    let o = run(&["verify", "--coarse", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["verdict"], "PASS");
    assert_eq!(
        v["results"]["report"]["cases"].as_array().unwrap().len(),
        23
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["energy", "--geometry", "disc", "--b", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["energy", "--h", "0:1:1"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--theta", "ninety"]).status.code(), Some(2));
    assert_eq!(
        run(&["energy", "--kernel", "london", "--source", "closed"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["energy", "--rel-tol", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--coarse", "--tol", "1e-20"]).status.code(),
        Some(3)
    );
}

#[test]
fn csv_layout_and_determinism() {
    let args = [
        "scan",
        "--geometry",
        "plate",
        "--pol",
        "axial",
        "--h",
        "0:2:5",
        "--theta",
        "0,45deg,1rad",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let mut lines = a.lines();
    let meta: serde_json::Value =
        serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_eq!(meta["command"], "scan");
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);
    assert!(lines
        .next()
        .unwrap()
        .starts_with("h_over_a,theta_deg,energy_reduced"));
    let r = rows(&a);
    assert_eq!(r.len(), 15);
    assert!((r[14][1] - 1f64.to_degrees()).abs() < 1e-12);
    // A different grid gives a different hash.
    let c = stdout(&[
        "scan",
        "--geometry",
        "plate",
        "--pol",
        "axial",
        "--h",
        "0:2:6",
    ]);
    let meta_c: serde_json::Value =
        serde_json::from_str(c.lines().next().unwrap().strip_prefix("# ").unwrap()).unwrap();
    assert_ne!(meta["config_hash"], meta_c["config_hash"]);
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("annulus-cp-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e.csv");
    let args = ["energy", "--h", "0:1:3"];
    let direct = stdout(&args);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--output", p]);
    assert!(stdout(&with_out).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn both_sources_agree() {
    for args in [
        vec![
            "energy",
            "--components",
            "0.4,1,-0.3",
            "--alpha",
            "1,0.6,0.2",
            "--beta",
            "30",
        ],
        vec!["force", "--components", "0.4,1,0.3"],
        vec![
            "torque",
            "--geometry",
            "disc",
            "--b",
            "1.5",
            "--pol",
            "isotropic",
        ],
    ] {
        let mut a = args.clone();
        a.extend(["--h", "0:3:4", "--theta", "0,25,80", "--source", "both"]);
        for r in rows(&stdout(&a)) {
            assert!(r[5] < 1e-9, "{args:?}: {r:?}");
        }
    }
}

#[test]
fn reduced_and_absolute_units() {
    let r = rows(&stdout(&[
        "energy",
        "--pol",
        "axial",
        "--h",
        "0",
        "--theta",
        "0",
        "--a",
        "2",
        "--absolute",
    ]));
    // Axial ring, e1 along the axis, in the plane: −52/(64π a⁶) = −52 E_r.
    assert!((r[0][2] + 52.0).abs() < 1e-12);
    assert!((r[0][3] + 52.0 / (64.0 * std::f64::consts::PI * 64.0)).abs() < 1e-15);
    let r = rows(&stdout(&[
        "energy",
        "--pol",
        "axial",
        "--h",
        "1",
        "--theta",
        "0",
        "--a",
        "2",
        "--absolute",
        "--ev",
    ]));
    assert_eq!(r[0][0], 2.0);
    let nat = rows(&stdout(&[
        "energy", "--pol", "axial", "--h", "1", "--theta", "0", "--a", "2",
    ]))[0][3];
    assert!((r[0][3] - 197.3269804 * nat).abs() < 1e-12 * r[0][3].abs());
}

#[test]
fn machine_report() {
    let v = json(&["machine"]);
    let c = &v["results"]["cycle"];
    assert!((c["h_e"].as_f64().unwrap() - 0.47785).abs() < 1e-5);
    assert!(c["works_energy"]["cd"].as_f64().unwrap().abs() < 1e-12);
    assert!(c["closure_residual"].as_f64().unwrap() < 1e-8);
    let csv = stdout(&["machine", "--format", "csv", "--h", "0:1:3"]);
    let r = rows(&csv);
    assert_eq!(r[0], vec![0.0, -1.0, 0.0]);
}

#[test]
fn electrostatic_table() {
    let r = rows(&stdout(&[
        "electro",
        "--h",
        "0,0.7071067811865476",
        "--theta",
        "0",
    ]));
    assert!((r[0][2] - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    assert!(r[1][2].abs() < 1e-12);
    let t = rows(&stdout(&[
        "electro",
        "--pol",
        "tangential",
        "--h",
        "0.5",
        "--theta",
        "0,45,90",
    ]));
    for row in t {
        assert!(row[2].abs() < 1e-14);
    }
}

#[test]
fn regions_and_map() {
    let v = json(&[
        "regions",
        "--geometry",
        "plate",
        "--pol",
        "isotropic",
        "--theta",
        "0,90",
    ]);
    let crit: Vec<f64> =
        serde_json::from_value(v["results"]["critical_angles_deg"].clone()).unwrap();
    assert_eq!(crit.len(), 2);
    assert!((crit[0] - 39.494).abs() < 1e-3);
    let m = stdout(&[
        "regions",
        "--geometry",
        "ring",
        "--pol",
        "radial",
        "--theta",
        "0,90",
        "--map-h",
        "1.3,2",
    ]);
    let flags: Vec<&str> = m
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(flags, ["0", "0", "1", "0"]);
}
