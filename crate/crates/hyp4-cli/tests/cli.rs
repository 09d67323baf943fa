//! End-to-end tests of the `hyp4` binary: exit codes, JSON output shapes
//! and the documented example invocations.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hyp4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyp4"))
        .args(args)
        .output()
        .expect("spawning the hyp4 binary")
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8");
    serde_json::from_str(&text).expect("stdout is a single JSON document")
}

fn tmp_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn bounds_c1_example_matches_reference() {
    let out = hyp4(&["bounds", "C1", "--in", "r=0.1", "nu=1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["formula_id"], "C1");
    let value = v["value"].as_f64().unwrap();
    assert!((value - 0.2 / (3.8f64.exp().floor() + 1.0)).abs() < 1e-15);
    assert!((value - 0.004444).abs() < 5e-7);
}

#[test]
fn bounds_rejects_unknown_formula_and_lists_known_ids() {
    let out = hyp4(&["bounds", "no_such_formula", "--in", "r=1"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("known formula ids"));
    assert!(stderr.contains("lemma1_count_bound"));
}

#[test]
fn bounds_rejects_malformed_input_pairs() {
    let out = hyp4(&["bounds", "C1", "--in", "r"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hyp4(&["bounds", "C1", "--in", "r=0.1", "r=0.2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbit_dilation_example_counts_seven() {
    let out = hyp4(&[
        "orbit",
        "--group",
        r#"{"kind":"loxodromic","lambda":2.718281828459045}"#,
        "--center",
        "0,0,0,1",
        "--radius",
        "3.5",
        "--nu",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["orbit_count"], 7);
    assert_eq!(v["ball_movers"], 15);
    assert_eq!(v["hypothesis_met"], true);
    assert_eq!(v["pass"], true);
    let bound = v["orbit_bound"]["value"].as_f64().unwrap();
    assert!((bound - (12.0f64).exp() / 0.125).abs() < 1e-6 * bound);
}

#[test]
fn verify_single_suite_passes_and_writes_report() {
    let json = tmp_path("lemma3_report.json");
    let out = hyp4(&[
        "verify",
        "lemma3",
        "--trials",
        "30",
        "--seed",
        "5",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("lemma3"));
    assert!(stdout.contains("pass"));
    assert!(!stdout.contains("wall_time"));
    let report: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["suite_id"], "lemma3");
    assert_eq!(report["pass"], true);
    assert_eq!(report["config"]["seed"], 5);
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = hyp4(&["verify", "lemma99", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_prop7_violations_exit_one() {
    let out = hyp4(&["verify", "prop7", "--trials", "25", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL"));
}

#[test]
fn verify_stdout_is_deterministic_across_runs() {
    let run = || {
        hyp4(&[
            "verify", "lemma1", "--trials", "40", "--seed", "9", "--nu", "0.4",
        ])
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cone_mesh_writes_a_closed_quad_grid() {
    let out_path = tmp_path("cone.obj");
    let out = hyp4(&[
        "cone-mesh",
        "--group",
        r#"{"kind":"loxodromic","lambda":1.2,"theta":0.7,"rotation_plane":[[1,0,0],[0,1,0]]}"#,
        "--nu",
        "0.4",
        "--res",
        "16",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["vertices"], 16 * 16);
    let obj = fs::read_to_string(&out_path).unwrap();
    let vertex_lines = obj.lines().filter(|l| l.starts_with("v ")).count();
    let face_lines = obj.lines().filter(|l| l.starts_with("f ")).count();
    assert_eq!(vertex_lines, 16 * 16);
    assert_eq!(face_lines, v["quads"].as_u64().unwrap() as usize);
}

#[test]
fn film_count_film_film_fixture_counts_one_and_writes_csv() {
    let csv = tmp_path("film_roots.csv");
    let job = format!(
        r#"{{
            "film": {{
                "isometry": {{"kind": "parabolic", "translation": [0.0, 0.5, 0.2]}},
                "x": [0.62, -0.34, -0.10, 0.78],
                "z": [1.18, -0.06, -0.06, 1.16]
            }},
            "film2": {{
                "isometry": {{"kind": "loxodromic", "lambda": 2.718281828459045}},
                "x": [0.6, 0.0, 0.0, 1.1],
                "z": [1.2, 0.0, 0.0, 0.55]
            }},
            "group": {{"kind": "loxodromic", "lambda": 2.718281828459045, "truncation": [4]}},
            "csv": "{}"
        }}"#,
        csv.display()
    );
    let job_path = tmp_path("film_job.json");
    fs::write(&job_path, &job).unwrap();
    let out = hyp4(&["film-count", "--spec", job_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["mode"], "film-film");
    assert_eq!(v["total"], 1);
    assert_eq!(v["roots"].as_array().unwrap().len(), 1);
    let table = fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(
        lines.next(),
        Some("sheet1,s,t,sheet2,u,v,x1,x2,x3,x4,sign")
    );
    assert_eq!(lines.count(), 1);
}

#[test]
fn film_count_plane_mode_finds_the_crossing() {
    let out = hyp4(&[
        "film-count",
        "--spec",
        r#"{"film":{"isometry":{"kind":"parabolic","translation":[0.0,0.5,0.2]},
            "x":[0.62,-0.34,-0.10,0.78],"z":[1.18,-0.06,-0.06,1.16]},
            "plane":{"vertical":{"point":[0,0,0],"direction":[1,0,0]}}}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["mode"], "film-plane");
    assert_eq!(v["count"], 1);
}

#[test]
fn film_count_requires_exactly_one_mode() {
    let only_film = r#"{"film":{"isometry":{"kind":"loxodromic","lambda":2.0},
        "x":[0.5,0,0,1],"z":[1,0.2,0,1.2]}}"#;
    let out = hyp4(&["film-count", "--spec", only_film]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("plane") && stderr.contains("film2"));
}

#[test]
fn group_spec_field_discipline_is_enforced() {
    let out = hyp4(&[
        "orbit",
        "--group",
        r#"{"kind":"loxodromic","lambda":2.0,"translation":[1,0,0]}"#,
        "--center",
        "0,0,0,1",
        "--radius",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("translation"));
}

#[test]
fn group_spec_accepts_rank_two_parabolic_lattices() {
    let out = hyp4(&[
        "orbit",
        "--group",
        r#"{"kind":"group","generators":[
            {"kind":"parabolic","translation":[1.5,0,0]},
            {"kind":"parabolic","translation":[0,1.5,0]}],
            "truncation":[12,12]}"#,
        "--center",
        "0,0,0,1",
        "--radius",
        "2",
        "--nu",
        "0.2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["orbit_count"].as_u64().unwrap() > 1);
    assert_eq!(v["pass"], true);
}
