use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn dyb(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dyb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn save(dir: &Path, name: &str, o: &Output) -> String {
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn pipeline_on_the_group_fixture_passes() {
    let dir = tempfile::tempdir().unwrap();
    let grp = save(dir.path(), "grp.json", &dyb(&["fixture", "group"], None));
    let built = dyb(&["construct", "from-ternary", "--lambda", "2", "--ternary", &grp, "--carrier", "K"], None);
    assert_eq!(built.status.code(), Some(0));
    let out = dyb(&["verify", "--dybe"], Some(&stdout(&built)));
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["format"], "dybkit/1");
    assert_eq!(report["passed"], true);
    assert_eq!(report["witness"], Value::Null);
}

#[test]
fn census_matches_the_oracle() {
    let out = dyb(&["search", "ternary", "--n", "2", "--census"], None);
    assert_eq!(out.status.code(), Some(0));
    let c = json(&out);
    assert_eq!(c["raw"], 25);
    assert_eq!(c["orbits"], 17);
    assert!(String::from_utf8_lossy(&out.stderr).contains("searching"));
}

#[test]
fn failing_table_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let bad_t = save(dir.path(), "bad_t.json", &dyb(&["fixture", "bad"], None));
    let bad = save(
        dir.path(),
        "bad.json",
        &dyb(&["construct", "from-ternary", "--lambda", "2", "--ternary", &bad_t], None),
    );
    let out = dyb(&["verify", "--dybe", &bad], None);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(r["witness"].as_array().unwrap().len(), 4);
    let text = dyb(&["--text", "verify", "--dybe", &bad], None);
    assert!(stdout(&text).starts_with("FAILED: set-theoretical dynamical Yang-Baxter equation violated at ("));
}

#[test]
fn search_streams_json_lines_deterministically() {
    let one = dyb(&["search", "ternary", "--n", "3", "--limit", "40", "--jobs", "1"], None);
    let four = dyb(&["search", "ternary", "--n", "3", "--limit", "40", "--jobs", "4"], None);
    assert_eq!(one.stdout, four.stdout);
    let lines: Vec<&str> = std::str::from_utf8(&one.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 40);
    for l in lines {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["n"], 3);
    }
    assert!(one.stderr.starts_with(b"searching"));
}

#[test]
fn search_filters_and_yb() {
    let out = dyb(&["search", "yb", "--k", "2", "--filters", "unitary"], None);
    assert_eq!(stdout(&out).lines().count(), 3);
    let reduced = dyb(&["search", "ternary", "--n", "2", "--symmetry-reduce"], None);
    assert_eq!(stdout(&reduced).lines().count(), 17);
    let bad = dyb(&["search", "ternary", "--n", "2", "--filters", "shiny"], None);
    assert_eq!(bad.status.code(), Some(2));
    let big = dyb(&["search", "ternary", "--n", "5"], None);
    assert_eq!(big.status.code(), Some(2));
    let stderr = String::from_utf8(big.stderr).unwrap();
    let err: Value = serde_json::from_str(stderr.lines().last().unwrap()).unwrap();
    assert_eq!(err["error"]["code"], "SizeLimit");
}

#[test]
fn input_errors_exit_two_with_code() {
    let out = dyb(&["verify"], Some("{\"dynset\": 3"));
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "ParseError");
    assert!(out.stdout.is_empty());
}

#[test]
fn classify_equiv_embed_and_bialg() {
    let dir = tempfile::tempdir().unwrap();
    let grp = save(dir.path(), "grp.json", &dyb(&["fixture", "group"], None));
    let fg = save(dir.path(), "fg.json", &dyb(&["fixture", "fg"], None));
    let on_k = save(dir.path(), "k.json", &dyb(&["construct", "from-ternary", "--lambda", "2", "--ternary", &grp], None));
    let on_fg = save(
        dir.path(),
        "s.json",
        &dyb(&["construct", "from-ternary", "--lambda", "2", "--ternary", &grp, "--carrier", &fg], None),
    );

    let flags = json(&dyb(&["classify", &on_fg], None));
    assert_eq!(flags["unitary"], true);
    assert_eq!(flags["invertible"], true);
    let tflags = json(&dyb(&["classify", &grp], None));
    assert_eq!(tflags["unitary"], true);

    let eq = json(&dyb(&["equiv", &on_k, &on_fg], None));
    assert_eq!(eq["equivalent"], true);
    assert!(eq["witness"]["rows"].is_array());

    let quiver = json(&dyb(&["embed", &fg], None));
    assert_eq!(quiver["arrows"].as_array().unwrap().len(), 4);
    let braided = dyb(&["embed", &on_fg], None);
    let b = save(dir.path(), "b.json", &braided);
    assert_eq!(dyb(&["verify", &b], None).status.code(), Some(0));

    let out = dyb(&["bialg", &on_fg, "--path-cap", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["phi"]["passed"], true);
    assert_eq!(v["presentations"]["A"]["name"], "A(w)");
    let on_k_bialg = dyb(&["bialg", &on_k], None);
    assert_eq!(on_k_bialg.status.code(), Some(1));
}

#[test]
fn construct_from_band_quasigroup_and_composite() {
    let dir = tempfile::tempdir().unwrap();
    let band = dir.path().join("band.json");
    std::fs::write(&band, r#"{"format":"dybkit/1","n":2,"op":[[0,1],[1,1]]}"#).unwrap();
    let s = dyb(&["construct", "from-band", "--band", band.to_str().unwrap(), "--strictness", "semilattice"], None);
    assert_eq!(dyb(&["verify"], Some(&stdout(&s))).status.code(), Some(0));

    let q = dir.path().join("q.json");
    std::fs::write(&q, r#"{"n":3,"op":[[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
    let s = dyb(&["construct", "from-quasigroup", "--quasigroup", q.to_str().unwrap()], None);
    assert_eq!(dyb(&["verify"], Some(&stdout(&s))).status.code(), Some(0));

    let yb = save(dir.path(), "flip.json", &dyb(&["fixture", "flip"], None));
    let t = save(dir.path(), "t.json", &dyb(&["fixture", "group"], None));
    let fam = save(dir.path(), "fam.json", &dyb(&["fixture", "z2-family"], None));
    let s = dyb(&["construct", "composite", "--yb", &yb, "--ternary", &t, "--family", &fam], None);
    assert_eq!(s.status.code(), Some(0));
    assert_eq!(dyb(&["verify", "--dybe", "--invariance", "--braid"], Some(&stdout(&s))).status.code(), Some(0));
}
