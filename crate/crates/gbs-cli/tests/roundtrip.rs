use std::path::PathBuf;

use gbs_cli::io::{roundtrip, Kind};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

/// Printing is a fixed point after one pass, and the printed form parses to the same value.
fn fixed_point(kind: Kind, text: &str) -> String {
    let once = roundtrip(kind, "input", text).unwrap();
    let twice = roundtrip(kind, "printed", &once).unwrap();
    assert_eq!(once, twice);
    once
}

#[test]
fn data_files() {
    for f in ["fv5.json", "pq23.json", "m2-fv5.json", "modified-dvr5.json"] {
        fixed_point(Kind::Filtration, &data(f));
    }
    for f in ["neg-part-pq.json", "neg-part-fv5.json", "skip-fv5.json", "column-m2.json", "modified-dvr5-glider.json"] {
        fixed_point(Kind::Glider, &data(f));
    }
    for f in ["z2-normal.json", "z2-skip.json"] {
        assert_eq!(fixed_point(Kind::Z2Glider, &data(f)).contains("\"tailJ\""), true);
    }
    for f in ["ext-5-split.json", "ext-2-ramified.json"] {
        fixed_point(Kind::Extension, &data(f));
    }
}

#[test]
fn lattices_are_canonicalized() {
    let raw = r#"{"schema": "gbs/1", "base": {"field": "Q", "valuations": ["5-adic"]}, "dim": 2,
                  "rows": [["10", "0"], ["3", "7/5"], ["0", "25"]]}"#;
    let printed = fixed_point(Kind::Lattice, raw);
    let v: serde_json::Value = serde_json::from_str(&printed).unwrap();
    // the span is {(u, w) : u, 5w ∈ ℤ_(5), 5w ≡ 4u mod 5}, of index 5 in ℤ_(5) ⊕ ⅕ℤ_(5)
    assert_eq!(v["rows"], serde_json::json!([["1", "4/5"], ["0", "1"]]));
    let glider = data("column-m2.json").replace(r#"[["1", "1", "0", "0"], ["0", "0", "1", "1"]]"#, r#"[["2", "2", "0", "0"], ["0", "0", "1", "1"], ["1", "1", "1", "1"]]"#);
    assert_eq!(fixed_point(Kind::Glider, &glider), fixed_point(Kind::Glider, &data("column-m2.json")));
}

#[test]
fn explicit_filtration_documents() {
    let mut doc: serde_json::Value = serde_json::from_str(&data("m2-fv5.json")).unwrap();
    let induced = fixed_point(Kind::Filtration, &doc.to_string());
    let levels: Vec<serde_json::Value> = (-1..=1)
        .map(|n: i32| {
            let s = match n { -1 => "5", 0 => "1", _ => "1/5" };
            serde_json::json!({
                "base": {"field": "Q", "valuations": ["5-adic"]},
                "dim": 4,
                "rows": [[s, "0", "0", "0"], ["0", s, "0", "0"], ["0", "0", s, "0"], ["0", "0", "0", s]],
            })
        })
        .collect();
    doc["algebra"] = serde_json::json!({
        "algebra": "M_2", "mode": "explicit", "window": [-1, 1], "levels": levels,
        "tailPlus": {"period": 1, "ideal": [-1]}, "tailMinus": {"period": 1, "ideal": [1]},
    });
    let explicit = fixed_point(Kind::Filtration, &doc.to_string());
    assert!(explicit.contains("\"explicit\""));
    // both describe the same filtration on K, possibly over different windows
    let phi = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["phi"].clone();
    let (a, b) = (phi(&induced), phi(&explicit));
    assert_eq!(a["tailPlus"], b["tailPlus"]);
    assert_eq!(a["tailMinus"], b["tailMinus"]);
    for (n, t) in b["table"].as_object().unwrap() {
        assert_eq!(t, &serde_json::json!([n.parse::<i64>().unwrap()]));
    }
}

#[test]
fn errors_carry_positions() {
    let full = data("neg-part-fv5.json");
    for cut in [10, full.len() / 2, full.len() - 3] {
        let e = roundtrip(Kind::Glider, "g.json", &full[..cut]).unwrap_err().0;
        let pos = e.strip_prefix("g.json:").unwrap();
        let (line, rest) = pos.split_once(':').unwrap();
        let (col, _) = rest.split_once(':').unwrap();
        assert!(line.parse::<usize>().unwrap() >= 1 && col.parse::<usize>().is_ok(), "{e}");
    }
    let ext = r#"{"schema": "gbs/1", "minpoly": "t^2+1", "valuation": {"over": "5", "factor": "2+i", "e": 2, "f": 1}}"#;
    assert!(roundtrip(Kind::Extension, "x", ext).unwrap_err().0.contains("(e, f)"));
    let z2 = r#"{"schema": "gbs/1", "window": [0, 0], "grid": [["cut(0,0)", "row(1)"]], "tailJ": {"kind": "zero"}, "tailI": {"kind": "zero"}}"#;
    assert!(roundtrip(Kind::Z2Glider, "z", z2).is_err());
    let tail = data("neg-part-fv5.json").replace(r#""ideal": [1]"#, r#""ideal": [1], "extra": 0"#);
    assert!(roundtrip(Kind::Glider, "t", &tail).unwrap_err().0.contains("extra"));
}
