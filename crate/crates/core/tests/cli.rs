use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn pythagoras(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pythagoras")).args(args).output().expect("run pythagoras")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn frame_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn verify_is_byte_identical_for_a_seed() {
    let a = pythagoras(&["verify", "all", "--seed", "42", "--cases", "50"]);
    let b = pythagoras(&["verify", "all", "--seed", "42", "--cases", "50"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = pythagoras(&["verify", "all", "--seed", "43", "--cases", "50"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_all_default_scale() {
    let out = pythagoras(&["verify", "all", "--seed", "42", "--cases", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["cases"], 11_000);
    let text = String::from_utf8(out.stdout).unwrap();
    let positions: Vec<usize> = ["suite", "seed", "tolerance", "cases", "failures", "max_residual", "per_case"]
        .iter()
        .map(|k| text.find(&format!("\"{k}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
    assert!(text.starts_with(r#"{"suite":"all","seed":42,"tolerance":1.0000000000000001e-09,"cases":11000,"#));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(pythagoras(&["verify", "spherical", "--tolerance", "0"]).status.code(), Some(1));
    assert_eq!(pythagoras(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(pythagoras(&["verify", "euclid", "--cases", "many"]).status.code(), Some(2));
    let out = pythagoras(&["verify", "degua", "--cases", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["per_case"][0]["residual"].as_f64().unwrap() < 1e-15);
}

#[test]
fn distance_commands() {
    let out = pythagoras(&["distance", "--cities", "quito,portoalegre", "--via", "macapa", "--compare"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("flat estimate"), "{text}");
    assert!(text.contains("right hypotenuse"), "{text}");

    let out = pythagoras(&["distance", "--radius", "1", "--from", "0,0", "--to", "0,90", "--json"]);
    assert!((json(&out)["distance"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);

    let out = pythagoras(&["distance", "--from", "10,20", "--to", "10,20", "--json"]);
    assert_eq!(json(&out)["distance"].as_f64(), Some(0.0));

    assert_eq!(pythagoras(&["distance", "--from", "10;20", "--to", "0,0"]).status.code(), Some(2));
    assert_eq!(pythagoras(&["distance", "--from", "95,0", "--to", "0,0"]).status.code(), Some(2));
    assert_eq!(pythagoras(&["distance", "--radius", "-1", "--from", "0,0", "--to", "0,0"]).status.code(), Some(2));
}

#[test]
fn simplex_command() {
    let out = pythagoras(&["simplex", "3", "4", "12", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let v0 = v["face_volumes"][0].as_f64().unwrap();
    assert!((v0 - 6.0 * 26f64.sqrt()).abs() <= 1e-12 * v0);
    assert!(v["pythagoras_residual"].as_f64().unwrap() <= 1e-12);
    assert!(v["normal_closure_residual"].as_f64().unwrap() <= 1e-12);

    assert_eq!(pythagoras(&["simplex", "1", "-2"]).status.code(), Some(2));
    assert_eq!(pythagoras(&["simplex", "5"]).status.code(), Some(2));
    assert_eq!(pythagoras(&["simplex"]).status.code(), Some(2));
}

#[test]
fn project_real_frame() {
    let f = frame_file(r#"{"n": 3, "m": 2, "vectors": [[1, 0, 1], [0, 1, 1]]}"#);
    let out = pythagoras(&["project", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["total"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-15);
    let per: Vec<(&String, f64)> =
        v["per_index"].as_object().unwrap().iter().map(|(k, x)| (k, x.as_f64().unwrap())).collect();
    assert_eq!(per.len(), 3);
    assert_eq!(per.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>(), ["1,2", "1,3", "2,3"]);
    assert!(per.iter().all(|(_, x)| (x - 1.0).abs() < 1e-15));
}

#[test]
fn project_complex_frame() {
    let f = frame_file("[[[1, 2]], [[3, 4]]]");
    let out = pythagoras(&["project", "--complex", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!((v["total"].as_f64().unwrap() - 30.0).abs() < 1e-12);
    assert!((v["per_index"]["1"].as_f64().unwrap() - 5.0).abs() < 1e-12);
    assert!((v["per_index"]["2"].as_f64().unwrap() - 25.0).abs() < 1e-12);
}

#[test]
fn project_usage_errors() {
    let empty = frame_file(r#"{"vectors": []}"#);
    let out = pythagoras(&["project", empty.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let broken = frame_file("{\"vectors\": [[1, 0],\n  [0, 1]\n");
    let out = pythagoras(&["project", broken.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(pythagoras(&["project", "/nonexistent/frame.json"]).status.code(), Some(2));
}

#[test]
fn help_and_version() {
    let out = pythagoras(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("distance"));
    assert_eq!(pythagoras(&["--version"]).status.code(), Some(0));
}
