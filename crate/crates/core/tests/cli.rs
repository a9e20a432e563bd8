use std::process::Command;

use serde_json::Value;

fn kjet(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kjet")).args(args).output().expect("spawn kjet");
    (out.status.code().unwrap_or(-1), out.stdout, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

#[test]
fn metric_on_disc_matches_closed_form() {
    let (code, out, _) = kjet(&["metric", "--domain", "disc", "--jet", "[[1,0],[2,0]]", "--k", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value - 2f64.sqrt()).abs() / 2f64.sqrt() < 0.02, "{value}");
    assert!(v["result"]["extremal"].is_object());
    assert_eq!(v["config"]["solver"]["degree"], 12);
    assert!(v["result"]["report"]["bracket"].is_array());
}

#[test]
fn output_is_byte_stable() {
    let args = ["metric", "--domain", "ellipsoid:1,2", "--jet", "[[[0.5,0],[0,0.3]],[[0,0],[0.2,0]]]", "--seed", "3"];
    let (c1, a, _) = kjet(&args);
    let (c2, b, _) = kjet(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let (_, a, _) = kjet(&["verify", "--suite", "circle", "--seed", "7"]);
    let (_, b, _) = kjet(&["verify", "--suite", "circle", "--seed", "7"]);
    assert_eq!(a, b);
}

#[test]
fn stationary_blaschke_certifies() {
    let (code, out, _) = kjet(&["stationary", "--domain", "disc", "--blaschke", "0.3,-0.2", "--k", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["exact"]["certified"], true);
    assert_eq!(v["exact"]["certificate"]["winding"], 0);
    assert!(v["exact"]["certificate"]["residual"].as_f64().unwrap() <= 1e-8);
    assert!(v["search"]["certificate"]["residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn certification_failure_exits_two() {
    let (code, out, _) = kjet(&["stationary", "--blaschke", "0,0", "--k", "1"]);
    assert_eq!(code, 2);
    let v = json(&out);
    assert_eq!(v["status"], "not_certified");
    assert_eq!(v["exact"]["winding"], -1);
}

#[test]
fn input_errors_exit_one_with_field_path() {
    let cases: [(&[&str], &str); 5] = [
        (&["metric", "--domain", "ball", "--jet", "[[1,2,3]]"], "--jet[0]"),
        (&["metric", "--domain", "{\"kind\": \"torus\"}", "--jet", "[1]"], "--domain"),
        (&["stationary", "--disc", "{\"numerators\": [[0, \"q\"]]}", "--k", "1"], "--disc.numerators[0][1]"),
        (&["pairing", "--blaschke", "0.3,zz", "--k", "1"], "--blaschke[1]"),
        (&["metric", "--domain", "disc", "--jet", "[1, 2]", "--k", "3"], "--k"),
    ];
    for (args, path) in cases {
        let (code, out, err) = kjet(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        assert!(err.contains(path), "{args:?}: {err}");
    }
}

#[test]
fn verify_all_passes() {
    let (code, out, _) = kjet(&["verify", "--suite", "all", "--seed", "7"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["suites"].as_array().unwrap().len(), 7);
}

#[test]
fn side_files_are_written() {
    let dir = std::env::temp_dir().join(format!("kjet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("metric.json");
    let csv = dir.join("profile.csv");
    let (code, stdout, _) = kjet(&[
        "metric", "--domain", "disc", "--jet", "[0.5]", "--grid", "64",
        "--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(json(&std::fs::read(&out).unwrap())["command"], "metric");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("theta,rho\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 64);

    let spec = dir.join("spectrum.csv");
    let (code, _, _) = kjet(&["spectrum", "--blaschke", "0.5", "--grid", "16", "--csv", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&spec).unwrap().lines().count(), 17);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pairing_and_extremal_report() {
    let (code, out, _) = kjet(&["pairing", "--blaschke", "0,0.4", "--k", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["probe"]["pass"], true);
    assert!(v["family"].as_array().unwrap().iter().all(|p| p["weighted_pairing"].as_f64().unwrap() > 0.0));

    let (code, out, _) = kjet(&["extremal", "--domain", "ball", "--jet", "[[[0.5,0],[0,0.5]]]"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["euler_lagrange"]["pass"], true);
}
