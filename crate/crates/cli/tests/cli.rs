use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn kplane(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kplane"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn gen(dir: &Path, args: &[&str]) -> PathBuf {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", "inst"]);
    let out = kplane(&full, dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    dir.join("inst.topo.json")
}

fn edge_count(topo: &Path) -> usize {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(topo).unwrap()).unwrap();
    v["edges"].as_array().unwrap().len()
}

fn class_sizes(v: &Value) -> Vec<usize> {
    v["classes"].as_array().unwrap().iter().map(|c| c["edges"].as_array().unwrap().len()).collect()
}

#[test]
fn gen_writes_both_files() {
    let dir = TempDir::new().unwrap();
    let topo = gen(dir.path(), &["dodecahedron"]);
    assert_eq!(edge_count(&topo), 90);
    assert!(dir.path().join("inst.plane.json").exists());
}

#[test]
fn gen_hex_expansion() {
    let dir = TempDir::new().unwrap();
    let topo = gen(dir.path(), &["hex", "--expand", "1"]);
    assert_eq!(edge_count(&topo), 55);
}

#[test]
fn glued_instance_verifies() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["glue", "--n", "4"]);
    let out = kplane(&["verify", "inst.topo.json", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn forests2_partition_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["dodecahedron"]);
    let out = kplane(&["partition", "forests2", "inst.topo.json", "--out", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let p: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    let sizes = class_sizes(&p);
    assert_eq!(sizes[0], 66);
    assert_eq!(sizes[1] + sizes[2], 24);

    let out = kplane(&["verify", "inst.topo.json", "--partition", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> =
        json(&out)["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect();
    assert!(names.iter().any(|n| n == "E2 forest"), "{names:?}");
}

#[test]
fn tampered_partition_fails_verification() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["dodecahedron"]);
    kplane(&["partition", "forests2", "inst.topo.json", "--out", "p.json"], dir.path());
    let path = dir.path().join("p.json");
    let mut p: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // move every E1 edge into E2, which then has crossings
    let moved = p["classes"][0]["edges"].take();
    p["classes"][1]["edges"].as_array_mut().unwrap().extend(moved.as_array().unwrap().iter().cloned());
    p["classes"][0]["edges"] = Value::Array(vec![]);
    std::fs::write(&path, serde_json::to_string(&p).unwrap()).unwrap();
    let out = kplane(&["verify", "inst.topo.json", "--partition", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn deg12_and_peel() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["dodecahedron"]);
    let out = kplane(&["partition", "deg12", "inst.topo.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(class_sizes(&json(&out)), vec![66, 24]);

    let out = kplane(&["partition", "peel", "inst.topo.json", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(class_sizes(&json(&out))[1], 24);
}

#[test]
fn three_plane_partitions() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["hex", "--expand", "2"]);
    let out = kplane(&["partition", "forests3", "inst.topo.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = kplane(&["partition", "peel-layers", "inst.topo.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(class_sizes(&json(&out)).len() <= 4);
}

#[test]
fn oracles() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["dodecahedron"]);
    let out = kplane(&["oracle", "min-removal", "inst.topo.json"], dir.path());
    assert_eq!(json(&out)["size"], 24);
    let out = kplane(&["--sequential", "oracle", "arboricity", "inst.topo.json"], dir.path());
    let v = json(&out);
    assert_eq!((v["brute_force"].clone(), v["min_cut"].clone()), (Value::from(2), Value::from(2)));

    gen(dir.path(), &["hex"]);
    let out = kplane(&["oracle", "patterns", "inst.topo.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    // two filled hexagons, each needing two edges removed
    let out = kplane(&["oracle", "exhaustive", "inst.topo.json"], dir.path());
    assert_eq!(json(&out)["min_size"]["best"], 4);
}

#[test]
fn corrupt_input_is_located() {
    let dir = TempDir::new().unwrap();
    let topo = gen(dir.path(), &["dodecahedron"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&topo).unwrap()).unwrap();
    v["crossings"][3]["e1"] = Value::from(5000);
    std::fs::write(&topo, v.to_string()).unwrap();
    let out = kplane(&["verify", "inst.topo.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("crossing id 3") && err.contains("5000"), "{err}");

    std::fs::write(&topo, "{\"n\": 3, \"edges\": [").unwrap();
    let out = kplane(&["verify", "inst.topo.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(kplane(&["partition", "nonsense", "x.json"], dir.path()).status.code(), Some(2));
    assert_eq!(kplane(&[], dir.path()).status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["dodecahedron"]);
    kplane(&["partition", "forests2", "inst.topo.json", "--out", "p.json"], dir.path());
    let out = kplane(&["render", "inst.topo.json", "--partition", "p.json", "--out", "d.svg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("d.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("E1: 66 edges"));
}
