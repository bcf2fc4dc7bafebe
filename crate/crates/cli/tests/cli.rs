use std::process::{Command, Output};

use serde_json::Value;

fn permlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(args)
        .env_remove("PERMLAB_THREADS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ok_payload(args: &[&str]) -> Value {
    let out = permlab(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    v["payload"].clone()
}

#[test]
fn containment() {
    let p = ok_payload(&["contains", "2413", "43582167"]);
    assert_eq!(p["contains"], true);
    let p = ok_payload(&["contains", "123", "7 9 6 3 8 5 4 1 2"]);
    assert_eq!(p["contains"], false);
    assert!(p["embedding"].is_null());
}

#[test]
fn inflation_amalgam() {
    let p = ok_payload(&["amalgamate", "2 1", "1", "1 2", "2"]);
    assert_eq!(p["sigma"], "2 3 1");
}

#[test]
fn counts_match_golden() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/tests/golden/av123.txt"
    );
    let golden: Vec<(u64, u64)> = std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| {
            let (n, c) = l.split_once(' ').unwrap();
            (n.parse().unwrap(), c.parse().unwrap())
        })
        .filter(|&(n, _)| n <= 8)
        .collect();
    let p = ok_payload(&["enumerate", "123", "--count-only", "-n", "8"]);
    let got: Vec<(u64, u64)> = p["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["count"].as_u64().unwrap()))
        .collect();
    assert_eq!(got, golden);
}

#[test]
fn listing_and_closures() {
    let p = ok_payload(&["enumerate", "1423", "1342", "-n", "4"]);
    assert_eq!(p["count"], 22);
    let closed = ok_payload(&["enumerate", "123", "--lr-closed", "-n", "4"]);
    assert_eq!(closed["permutations"], p["permutations"]);
    let out = permlab(&["enumerate", "123", "--lr-closed", "-n", "11"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["payload"]["kind"], "resource_limit");
}

#[test]
fn exit_codes() {
    let out = permlab(&["decompose", "1423"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "error");
    assert_eq!(
        v["payload"]["witness"]["embedding"],
        serde_json::json!([1, 2, 3, 4])
    );

    let out = permlab(&["draw", "1 2 3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["payload"]["kind"], "not_in_class");

    for bad in [
        &["draw", "1 1"][..],
        &["contains", "12", "abc"],
        &["verify", "nope"],
        &["amalgamate", "21", "3", "12", "1"],
    ] {
        let out = permlab(bad);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert_eq!(json(&out)["status"], "error");
    }
    assert_eq!(permlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn search_reports_not_found() {
    let out = permlab(&[
        "amalgamate",
        "12",
        "1",
        "21",
        "1",
        "--search",
        "4",
        "--basis",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "not_found");
    let p = ok_payload(&[
        "amalgamate",
        "3142",
        "3",
        "231",
        "2",
        "--search",
        "6",
        "--basis",
        "123",
    ]);
    let cert = p.to_string();
    let check = ok_payload(&[
        "check", "amalgam", "3142", "3", "231", "2", &cert, "--basis", "123",
    ]);
    assert_eq!(check["valid"], true);
}

#[test]
fn certificates_round_trip() {
    let corpus = [
        "1",
        "21",
        "231",
        "312",
        "2413",
        "3142",
        "4321",
        "4357216",
        "463152",
        "532614",
        "796385412",
    ];
    for q in corpus {
        let tree = ok_payload(&["decompose", q]).to_string();
        assert_eq!(ok_payload(&["check", "tree", q, &tree])["valid"], true);
        let coloring = ok_payload(&["split", q]).to_string();
        assert_eq!(ok_payload(&["check", "split", q, &coloring])["valid"], true);
        let last = q.len().to_string();
        let cert = ok_payload(&["amalgamate", q, &last, "231", "2"]).to_string();
        assert_eq!(
            ok_payload(&["check", "amalgam", q, &last, "231", "2", &cert])["valid"],
            true
        );
        let cert = ok_payload(&["amalgamate", q, "1", q, &last]).to_string();
        assert_eq!(
            ok_payload(&["check", "amalgam", q, "1", q, &last, &cert])["valid"],
            true
        );
    }
    for q in ["1", "21", "231", "3142", "532614", "796385412"] {
        let drawing = ok_payload(&["draw", q]).to_string();
        assert_eq!(
            ok_payload(&["check", "drawing", q, &drawing])["valid"],
            true
        );
    }
}

#[test]
fn checkers_reject_forgeries() {
    let forged = r#"{"sigma": "2 3 1", "g1": [1, 2], "g2": [1, 2]}"#;
    let out = permlab(&["check", "amalgam", "21", "1", "12", "2", forged]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["payload"]["reason"], "bad_embedding_1");
    let out = permlab(&[
        "check",
        "tree",
        "231",
        r#"{"skeleton": "21", "children": []}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = permlab(&["check", "split", "21", "not json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_stable() {
    let args = ["verify", "amalgamation", "--max-n", "3"];
    let a = permlab(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(args)
        .env("PERMLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let pretty = permlab(&["--pretty", "contains", "21", "4321"]);
    let plain = permlab(&["contains", "21", "4321"]);
    assert!(pretty.stdout.len() > plain.stdout.len());
    assert_eq!(json(&pretty), json(&plain));
}

#[test]
fn thread_cap() {
    for (value, code) in [("2", 0), ("0", 2), ("many", 2)] {
        let out = Command::new(env!("CARGO_BIN_EXE_permlab"))
            .args(["verify", "golden"])
            .env("PERMLAB_THREADS", value)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(code), "{value}");
    }
}

#[test]
fn verify_all_small() {
    let out = permlab(&["verify", "all", "--max-n", "3"]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0), "{v}");
    assert_eq!(v["payload"]["suites"].as_array().unwrap().len(), 7);
}
