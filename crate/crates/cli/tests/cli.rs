use std::path::Path;
use std::process::{Command, Output};

fn qglinf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qglinf")).args(args).env_remove("QGLINF_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build(dir: &Path, sig: &str, depth: usize) -> String {
    let path = dir.join(format!("{}-{depth}.json", sig.replace(':', "")));
    let p = path.to_str().unwrap().to_string();
    let o = qglinf(&["build", "--signature", sig, "--depth", &depth.to_string(), "--out", &p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn build_reports_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let o = qglinf(&["build", "--signature", "ls:0", "--depth", "1", "--out", dir.path().join("m.json").to_str().unwrap()]);
    assert!(stdout(&o).starts_with("basis size 3 "));
    let o = qglinf(&["build", "--signature", "offset=0; left=2; window_start=0; values=2; right=2", "--depth", "3", "--out", dir.path().join("c.json").to_str().unwrap()]);
    assert!(stdout(&o).starts_with("basis size 1 "));
}

#[test]
fn malformed_signature_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sig.txt");
    std::fs::write(&file, "# comment\noffset=0; left=1; window_start=zero; values=1,0; right=0\n").unwrap();
    let o = qglinf(&["build", "--signature", file.to_str().unwrap(), "--depth", "1", "--out", dir.path().join("m.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn act_examples() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "ls:0", 1);
    let f = stdout(&qglinf(&["act", "--module", &m, "--generator", "F:-1"]));
    assert_eq!(f.trim(), "+(1) · |2⟩");
    assert_eq!(stdout(&qglinf(&["act", "--module", &m, "--generator", "E:-1"])).trim(), "ZERO");
    assert_eq!(stdout(&qglinf(&["act", "--module", &m, "--generator", "H:0"])).trim(), "0 · |1⟩");
    let o = qglinf(&["act", "--module", &m, "--generator", "E:5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qglinf(&["act", "--module", &m, "--generator", "F:-1", "--pattern", "99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn full_suite_passes_on_m0_depth_2() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "ls:0", 2);
    let report = dir.path().join("report.json");
    let o = qglinf(&["verify", "--module", &m, "--workers", "2", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["suites"].as_array().unwrap().len(), 7);
    let first = &r["suites"][0]["reports"][0];
    for key in ["suite", "relation", "indices", "status", "checked", "failures"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn identities_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "ls:0", 2);
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = qglinf(&["verify", "--module", &m, "--suites", "identities", "--k", "2", "--samples", "100", "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read_to_string(out).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let r: serde_json::Value = serde_json::from_str(&a).unwrap();
    let sampled: Vec<_> = r["suites"][0]["reports"].as_array().unwrap().iter().filter(|x| x["basis_id"] == "sampled").collect();
    assert_eq!(sampled.len(), 2);
    assert!(sampled.iter().all(|x| x["checked"] == 100 && x["status"] == "pass"));
}

#[test]
fn narrow_sampling_signature_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "ls:0", 1);
    let o = qglinf(&["verify", "--module", &m, "--suites", "identities", "--k", "1", "--sample-signature", "ls:0"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL identities"));
}

#[test]
fn corrupted_hash_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "ls:1", 1);
    let text = std::fs::read_to_string(&m).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["header"]["basis_hash"] = serde_json::Value::String("0".repeat(64));
    std::fs::write(&m, v.to_string()).unwrap();
    let o = qglinf(&["verify", "--module", &m, "--suites", "highest"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("integrity"));
}

#[test]
fn cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = Command::new(env!("CARGO_BIN_EXE_qglinf"))
        .args(["build", "--signature", "ls:0", "--depth", "2", "--out", out.to_str().unwrap()])
        .env("QGLINF_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn exports() {
    let dir = tempfile::tempdir().unwrap();
    let m = build(dir.path(), "ls:0", 1);
    let h: serde_json::Value = serde_json::from_str(&stdout(&qglinf(&["export", "--module", &m, "--generator", "H:-1"]))).unwrap();
    let entries = h["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["col"] == e["row"]));

    let out = dir.path().join("f.json");
    let o = qglinf(&["export", "--module", &m, "--generator", "F:-1", "--format", "numeric", "--q", "3/2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let first = std::fs::read(&out).unwrap();
    let n: serde_json::Value = serde_json::from_slice(&first).unwrap();
    let rows = n["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let nonzero = rows.iter().flat_map(|r| r.as_array().unwrap()).filter(|x| x.as_f64() != Some(0.0)).count();
    assert_eq!(nonzero, 1);
    qglinf(&["export", "--module", &m, "--generator", "F:-1", "--format", "numeric", "--q", "3/2", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), first);

    let o = qglinf(&["export", "--module", &m, "--generator", "F:-1", "--format", "numeric", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let csv = stdout(&qglinf(&["export", "--module", &m, "--generator", "F:-1", "--format", "csv"]));
    assert_eq!(csv, "col,row,coeff\n1,2,\"(1)\"\n");
}
