mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use almostline::{load_topology, verify, Drawing};
use common::{fixture, fixture_path};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: &str) -> Out {
    let mut child = Command::new(env!("CARGO_BIN_EXE_almostline"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Out {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn fx(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("almostline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn version() {
    let o = run(&["--version"], "");
    assert_eq!((o.code, o.stdout.trim()), (0, "1"));
}

#[test]
fn test_verdicts() {
    let o = run(&["test", &fx("fig1a.json")], "");
    assert_eq!((o.code, o.stdout.trim()), (0, "DRAWABLE"));
    let o = run(&["test", &fx("fig1c.json")], "");
    assert_eq!((o.code, o.stdout.trim()), (1, "NOT-DRAWABLE v"));
    let o = run(&["test", &fx("fig1a_plane_a.json")], "");
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("NOT-DRAWABLE face:"));
}

#[test]
fn gen_piped_into_test() {
    let g = run(&["gen", "--gk", "3"], "");
    assert_eq!(g.code, 0);
    let o = run(&["test", "-"], &g.stdout);
    assert_eq!((o.code, o.stdout.trim()), (0, "DRAWABLE"));
}

#[test]
fn unknown_on_non_maximal_plane() {
    let mut v: serde_json::Value = serde_json::from_str(&run(&["gen", "--gk", "3"], "").stdout).unwrap();
    let g = load_topology(&v.to_string()).unwrap();
    let pg = almostline::planarize(&g).unwrap();
    let face: Vec<String> = pg.face_vertices(0).iter().map(|&x| pg.name(x).to_string()).collect();
    v["external_face"] = serde_json::json!(face);
    let o = run(&["test", "-"], &v.to_string());
    assert_eq!((o.code, o.stdout.trim()), (2, "UNKNOWN"));
}

#[test]
fn draw_then_verify() {
    let svg = tmp("fig10.svg");
    let json = tmp("fig10.json");
    let o = run(&["draw", &fx("fig10.json"), "-o", &svg, "--json", &json], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    let o = run(&["verify", &fx("fig10.json"), &json], "");
    assert_eq!((o.code, o.stdout.trim()), (0, "OK"));
    let g = fixture("fig10.json");
    let d = Drawing::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap().aligned(&g).unwrap();
    assert!(verify(&g, &d).ok());
}

#[test]
fn draw_refusals() {
    let o = run(&["draw", &fx("fig1c.json"), "-o", &tmp("c.svg")], "");
    assert_eq!(o.code, 1);
    assert_eq!(o.stderr.lines().count(), 1);
    let o = run(&["draw", &fx("fig1a_plane_a.json"), "-o", &tmp("a.svg")], "");
    assert_eq!(o.code, 1);
}

#[test]
fn keep_augmentation_adds_edges() {
    let plain = tmp("gk_plain.json");
    let kept = tmp("gk_kept.json");
    let g = run(&["gen", "--random", "15", "--seed", "3", "--consistent"], "").stdout;
    assert_eq!(run(&["draw", "-", "-o", &tmp("p.svg"), "--json", &plain], &g).code, 0);
    assert_eq!(run(&["draw", "-", "-o", &tmp("k.svg"), "--json", &kept, "--keep-augmentation"], &g).code, 0);
    let count = |p: &str| {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v["vertices"].as_array().unwrap().len()
    };
    assert!(count(&kept) >= count(&plain));
}

#[test]
fn verify_detects_bad_drawing() {
    let json = tmp("fig1a.json");
    assert_eq!(run(&["draw", &fx("fig1a.json"), "-o", &tmp("x.svg"), "--json", &json], "").code, 0);
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let first = v["vertices"][0].clone();
    v["vertices"][1]["x"] = first["x"].clone();
    v["vertices"][1]["y"] = first["y"].clone();
    let o = run(&["verify", &fx("fig1a.json"), "-"], &v.to_string());
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("FAIL"));
}

#[test]
fn split_dump() {
    let o = run(&["split", &fx("fig9.json"), "--dump"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let walk: Vec<&str> = v["walk"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(walk.join(","), "s,e,d,c,b,a,t,g,h,i,h,j,k");
    let o = run(&["split", &fx("fig10.json"), "--dump"], "");
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let caps: Vec<u64> = v["side_graphs"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["cap"] == true)
        .map(|s| s["label"].as_u64().unwrap())
        .collect();
    assert_eq!(caps, [4, 8]);
}

#[test]
fn validate_command() {
    assert_eq!(run(&["validate", &fx("fig1c.json")], "").code, 0);
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fx("fig1c.json")).unwrap()).unwrap();
    v["crossings"][0] = serde_json::json!({"edge": ["s", "a"], "left": "a"});
    let o = run(&["validate", "-"], &v.to_string());
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("crossing edge incident to endpoint"));
}

#[test]
fn usage_errors() {
    for args in [&["bogus"][..], &["gen"], &["gen", "--gk", "2", "--random", "5"], &["test"], &[]] {
        let o = run(args, "");
        assert_eq!(o.code, 2, "{args:?}");
        assert_eq!(o.stderr.lines().count(), 1, "{args:?}: {}", o.stderr);
    }
    let o = run(&["test", "/nonexistent/graph.json"], "");
    assert_eq!((o.code, o.stderr.lines().count()), (2, 1));
    let o = run(&["test", "-"], "{ not json");
    assert_eq!((o.code, o.stderr.lines().count()), (2, 1));
}

#[test]
fn bench_area_csv() {
    let o = run(&["bench-area", "--kmax", "4"], "");
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "k,vertices,log2_area,log2_ratio,verified");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn bench_time_csv() {
    let o = run(&["bench-time", "--sizes", "100,200", "--repeat", "1"], "");
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "k,vertices,edges,seconds,ratio");
    assert_eq!(lines.len(), 3);
}
