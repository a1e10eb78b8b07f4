use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbs")).args(args).env_remove("GBS_SEED").output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--output", "json"]);
    let out = gbs(&a);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    assert_eq!(v["schema"], "gbs/1");
    (v, out.status.code().unwrap())
}

fn tmp(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("gbs-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn documented_examples() {
    let fv5 = data("fv5.json");
    let (v, code) = json(&["field-enum", "--filtration", &fv5, "--window", "-1:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], 3);
    let shifts: Vec<i64> = v["results"]["elements"].as_array().unwrap().iter().map(|e| e["shift"].as_i64().unwrap()).collect();
    assert_eq!(shifts, vec![-1, 0, 1]);

    let (v, code) = json(&["brandt", "verify", "--sample", &data("shifts.json")]);
    assert_eq!(code, 0);
    let axioms = v["results"]["axioms"].as_array().unwrap();
    assert_eq!(axioms.len(), 5);
    for (k, a) in axioms.iter().enumerate() {
        assert_eq!(a["axiom"], k as i64 + 1);
        assert_eq!(a["status"], "pass");
        assert!(a["citation"].is_string());
        assert!(a.get("counterexample").is_none());
    }

    let out = gbs(&["maxorder-check", "--order", "hurwitz2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("not strong"));
    let (v, _) = json(&["maxorder-check", "--order", "hurwitz2", "--k", "2"]);
    assert_eq!(v["results"]["strong"], true);
}

#[test]
fn verdicts() {
    let (v, code) = json(&["classify", "--glider", &data("neg-part-pq.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"], "reducible");
    assert_eq!(v["results"]["witness"]["prefix"][0]["rows"][0][0], "2");
    let (v, _) = json(&["classify", "--glider", &data("neg-part-fv5.json")]);
    assert_eq!(v["results"]["verdict"], "irreducible");
    assert_eq!(v["results"]["element"]["shift"], 2);
    let (v, _) = json(&["classify", "--glider", &data("column-m2.json")]);
    assert_eq!(v["results"]["element"]["point"], serde_json::json!(["1", "1"]));
    let (v, _) = json(&["rank2", "classify", "--glider", &data("z2-skip.json")]);
    assert_eq!(v["results"]["verdict"], "reducible");
    let (v, _) = json(&["rank2", "classify", "--shift", "-2,1"]);
    assert_eq!(v["results"]["element"]["shift"], serde_json::json!([-2, 1]));
    let (v, _) = json(&["rank2", "body", "--shift", "-2,1"]);
    assert_eq!(v["results"]["shift"], -2);
    let (v, code) = json(&["brandt", "verify", "--sample", &data("conjugates.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["axioms"][2]["checked"], 24);
    let (v, code) = json(&["tensor-map", "--filtration", &data("m2-fv5.json"), "--ext", &data("ext-5-split.json"), "--points", &data("points.json"), "--window", "-1:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["map"].as_array().unwrap().len(), 15);
    let (v, code) = json(&["assoc-strong", "--filtration", &data("modified-dvr5.json"), "--glider", &data("modified-dvr5-glider.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["filtration"]["phi"]["table"]["0"], serde_json::json!([0]));
}

#[test]
fn exit_codes() {
    let fv5 = data("fv5.json");
    let code = |a: &[&str]| gbs(a).status.code().unwrap();
    assert_eq!(code(&["field-enum", "--filtration", &fv5]), 2);
    assert_eq!(code(&["field-enum", "--filtration", &fv5, "--window", "3:1"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["field-enum", "--filtration", &data("m2-fv5.json"), "--window", "0:1"]), 2);
    assert_eq!(code(&["maxorder-check", "--order", "m2r", "--k", "x"]), 2);

    let truncated = tmp("trunc.json", r#"{"schema": "gbs/1", "field": "Q", "valua"#);
    let out = gbs(&["field-enum", "--filtration", &truncated, "--window", "0:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":1:"), "{}", String::from_utf8_lossy(&out.stderr));
    let unknown = tmp("unknown.json", r#"{"schema": "gbs/1", "field": "Q", "valuations": ["5-adic"], "colour": 1}"#);
    assert_eq!(code(&["field-enum", "--filtration", &unknown, "--window", "0:1"]), 2);
    let old = tmp("old.json", r#"{"schema": "gbs/0", "field": "Q", "valuations": ["5-adic"]}"#);
    assert_eq!(code(&["field-enum", "--filtration", &old, "--window", "0:1"]), 2);
    let none = tmp("none.json", r#"{"field": "Q", "valuations": ["5-adic"]}"#);
    assert_eq!(code(&["field-enum", "--filtration", &none, "--window", "0:1"]), 2);

    assert_eq!(code(&["maxorder-check", "--order", "m2r", "--k", "-1"]), 1);
    assert_eq!(code(&["assoc-strong", "--filtration", &fv5, "--glider", &data("skip-fv5.json")]), 1);
    let bad = tmp("bad-glider.json", &std::fs::read_to_string(data("skip-fv5.json")).unwrap().replace("\"25\"", "\"1/5\""));
    // a prefix that fails the glider axioms is rejected as malformed input
    let out = gbs(&["classify", "--glider", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("M_1"));
}

#[test]
fn deterministic_output() {
    let runs = [
        vec!["brandt", "verify", "--sample", "conjugates.json"],
        vec!["classify", "--glider", "neg-part-pq.json"],
        vec!["ceil-table", "--k", "4", "--window", "-3:5"],
        vec!["selftest"],
    ];
    for r in runs {
        let args: Vec<String> = r.iter().map(|a| if a.ends_with(".json") { data(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(|s| s.as_str()).chain(["--output", "json"]).collect();
        let (a, b) = (gbs(&args), gbs(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seeded_selftest() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_gbs")).args(["selftest", "--output", "json"]).env("GBS_SEED", seed).output().unwrap()
    };
    let (a, b, c) = (run("17"), run("17"), run("0"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"]["seed"], 17);
    let d: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(d["results"]["seed"], 0);
    assert_eq!(gbs(&["selftest", "--output", "json"]).stdout, c.stdout);
}

/// Statement ids listed in the guide's citation table.
fn documented_ids() -> Vec<String> {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "book", "src", "statements.md"].iter().collect();
    let text = std::fs::read_to_string(p).unwrap();
    text.lines()
        .filter_map(|l| l.strip_prefix("| `"))
        .filter_map(|l| l.split('`').next())
        .map(str::to_string)
        .collect()
}

#[test]
fn citations_are_documented() {
    let ids = documented_ids();
    assert!(ids.len() >= 10);
    let runs: Vec<Vec<String>> = vec![
        vec!["field-enum".into(), "--filtration".into(), data("fv5.json"), "--window".into(), "0:0".into()],
        vec!["csa-enum".into(), "--filtration".into(), data("m2-fv5.json"), "--points".into(), data("points.json"), "--window".into(), "0:0".into()],
        vec!["classify".into(), "--glider".into(), data("neg-part-pq.json")],
        vec!["classify".into(), "--glider".into(), data("column-m2.json")],
        vec!["subglider".into(), "--glider".into(), data("skip-fv5.json"), "--glider".into(), data("neg-part-fv5.json")],
        vec!["strong-check".into(), "--filtration".into(), data("fv5.json")],
        vec!["estep".into(), "--filtration".into(), data("fv5.json")],
        vec!["maxorder-check".into(), "--order".into(), "m2r".into(), "--k".into(), "3".into()],
        vec!["ceil-table".into(), "--k".into(), "2".into()],
        vec!["tensor-map".into(), "--filtration".into(), data("fv5.json"), "--ext".into(), data("ext-2-ramified.json"), "--shift".into(), "1".into()],
        vec!["brandt".into(), "mul".into(), "--sample".into(), data("shifts.json")],
        vec!["brandt".into(), "inv".into(), "--sample".into(), data("shifts.json")],
        vec!["brandt".into(), "unit".into(), "--sample".into(), data("conjugates.json")],
        vec!["brandt".into(), "verify".into(), "--sample".into(), data("shifts.json")],
        vec!["rank2".into(), "residue".into(), "--shift".into(), "0,2".into()],
        vec!["selftest".into()],
    ];
    for r in runs {
        let args: Vec<&str> = r.iter().map(|s| s.as_str()).collect();
        let (v, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        let cites = v["citations"].as_array().unwrap();
        assert!(!cites.is_empty());
        for c in cites {
            assert!(ids.contains(&c.as_str().unwrap().to_string()), "{c} is not in the table");
        }
    }
}
