mod common;

use std::fs;
use std::path::Path;

use common::{dense_to_cols, dir_contents, qcsc};
use qcsc::code::{export_instance_json, parse_alist, Assignment, BaseCode, CodeInstance, CouplingScheme, Stage};
use serde_json::Value;
use tempfile::tempdir;

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn write_instance(dir: &Path, z: u64, p: [[i64; 2]; 2], l: [[i64; 2]; 2]) -> std::path::PathBuf {
    let base = BaseCode::all_ones(2, 2).unwrap();
    let scheme = CouplingScheme::uniform(1, 2, z).unwrap();
    let inst = CodeInstance::new(
        base.clone(),
        scheme,
        Assignment::from_dense(Stage::Partition, &base, &p.map(|r| r.to_vec())).unwrap(),
        Assignment::from_dense(Stage::Lift, &base, &l.map(|r| r.to_vec())).unwrap(),
        None,
    )
    .unwrap();
    let path = dir.join(format!("inst-z{z}.json"));
    fs::write(&path, export_instance_json(&inst)).unwrap();
    path
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qcsc(&["bounds", "--gamma", "3"]), 2);
    assert_eq!(qcsc(&["frobnicate"]), 2);
    assert_eq!(qcsc(&["verify", "--in", "/nonexistent/instance.json"]), 2);
    assert_eq!(
        qcsc(&[
            "construct",
            "--gamma",
            "3",
            "--kappa",
            "4",
            "--m",
            "1",
            "--Z",
            "8",
            "--mode",
            "sideways"
        ]),
        2
    );
    assert_eq!(
        qcsc(&[
            "experiment",
            "--gamma",
            "3",
            "--kappa",
            "3",
            "--m",
            "1",
            "--trials",
            "0"
        ]),
        2
    );
    assert_eq!(
        qcsc(&[
            "bounds",
            "--gamma",
            "3",
            "--kappa",
            "7",
            "--m",
            "1",
            "--delta-source",
            "guess"
        ]),
        2
    );
}

#[test]
fn bounds_succeeds_even_when_infeasible() {
    let d = tempdir().unwrap();
    assert_eq!(
        qcsc(&[
            "--out-dir",
            s(d.path()),
            "bounds",
            "--gamma",
            "2",
            "--kappa",
            "2",
            "--m",
            "0",
            "--Z",
            "1"
        ]),
        0
    );
    let doc = read_json(&d.path().join("bounds.json"));
    assert_eq!(doc["tool"], "qcsc");
    assert!(doc["result"].to_string().contains("\"feasible\":false"));
}

#[test]
fn cap_hit_exits_three_with_trace_only() {
    let d = tempdir().unwrap();
    let code = qcsc(&[
        "--out-dir",
        s(d.path()),
        "--seed",
        "5",
        "construct",
        "--gamma",
        "3",
        "--kappa",
        "7",
        "--m",
        "1",
        "--Z",
        "3",
        "--mode",
        "joint",
        "--max-resamples",
        "1",
    ]);
    assert_eq!(code, 3);
    let names: Vec<String> = dir_contents(d.path()).into_iter().map(|f| f.0).collect();
    assert_eq!(names, vec!["trace.json".to_string()]);
    let doc = read_json(&d.path().join("trace.json"));
    assert_eq!(doc["result"]["trace"]["terminated"], false);
}

#[test]
fn construct_is_byte_deterministic_and_verifies() {
    let a = tempdir().unwrap();
    let b = tempdir().unwrap();
    for d in [&a, &b] {
        let code = qcsc(&[
            "--out-dir",
            s(d.path()),
            "--seed",
            "9",
            "construct",
            "--gamma",
            "3",
            "--kappa",
            "4",
            "--m",
            "1",
            "--Z",
            "8",
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(dir_contents(a.path()), dir_contents(b.path()));
    let inst = a.path().join("instance.json");
    let v = tempdir().unwrap();
    assert_eq!(qcsc(&["--out-dir", s(v.path()), "verify", "--in", s(&inst)]), 0);
    let doc = read_json(&v.path().join("verify.json"));
    assert_eq!(doc["result"]["verdict"], "PASS");
    assert!(doc["result"]["girth"].as_u64().unwrap() >= 6);
}

#[test]
fn verify_lists_planted_four_cycle() {
    let d = tempdir().unwrap();
    let inst = write_instance(d.path(), 4, [[0, 1], [0, 1]], [[1, 3], [2, 0]]);
    let out = tempdir().unwrap();
    assert_eq!(qcsc(&["--out-dir", s(out.path()), "verify", "--in", s(&inst)]), 1);
    let doc = read_json(&out.path().join("verify.json"));
    assert_eq!(doc["result"]["verdict"], "FAIL");
    assert_eq!(doc["result"]["active"], serde_json::json!(["c0-r0-c1-r1"]));
    assert_eq!(doc["result"]["girth"], 4);
}

#[test]
fn verify_with_unit_lifting_degree() {
    let d = tempdir().unwrap();
    let balanced = write_instance(d.path(), 1, [[0, 0], [1, 1]], [[0, 0], [0, 0]]);
    let out = tempdir().unwrap();
    assert_eq!(qcsc(&["--out-dir", s(out.path()), "verify", "--in", s(&balanced)]), 1);
    let doc = read_json(&out.path().join("verify.json"));
    assert_eq!(doc["result"]["lift_condition_trivial"], true);

    let d2 = tempdir().unwrap();
    let unbalanced = write_instance(d2.path(), 1, [[0, 1], [0, 0]], [[0, 0], [0, 0]]);
    assert_eq!(qcsc(&["--out-dir", s(out.path()), "verify", "--in", s(&unbalanced)]), 0);
    let doc = read_json(&out.path().join("verify.json"));
    assert_eq!(doc["result"]["verdict"], "PASS");
}

#[test]
fn export_round_trips_between_formats() {
    let d = tempdir().unwrap();
    assert_eq!(
        qcsc(&[
            "--out-dir",
            s(d.path()),
            "construct",
            "--gamma",
            "3",
            "--kappa",
            "4",
            "--m",
            "1",
            "--Z",
            "5"
        ]),
        0
    );
    let inst = d.path().join("instance.json");
    assert_eq!(
        qcsc(&[
            "--out-dir",
            s(d.path()),
            "export",
            "--in",
            s(&inst),
            "--alist",
            "a.alist",
            "--dense",
            "a.txt",
            "--protograph",
            "p.alist"
        ]),
        0
    );
    let alist = parse_alist(&fs::read_to_string(d.path().join("a.alist")).unwrap()).unwrap();
    let dense: Vec<Vec<u8>> = fs::read_to_string(d.path().join("a.txt"))
        .unwrap()
        .lines()
        .map(|l| l.bytes().map(|b| b - b'0').collect())
        .collect();
    assert_eq!(alist.to_dense(), dense);
    assert_eq!(
        fs::read(d.path().join("a.alist")).unwrap(),
        fs::read(d.path().join("code.alist")).unwrap()
    );
    assert_eq!(
        qcsc(&[
            "--out-dir",
            s(d.path()),
            "export",
            "--in",
            s(&d.path().join("a.alist")),
            "--dense",
            "b.txt"
        ]),
        0
    );
    assert_eq!(
        fs::read(d.path().join("a.txt")).unwrap(),
        fs::read(d.path().join("b.txt")).unwrap()
    );
    let cols = dense_to_cols(&dense);
    assert!(cols.iter().all(|c| c.len() == 3));
    let proto = parse_alist(&fs::read_to_string(d.path().join("p.alist")).unwrap()).unwrap();
    assert_eq!(proto.num_cols() * 5, alist.num_cols());
}

#[test]
fn config_file_values_yield_to_flags() {
    let d = tempdir().unwrap();
    let cfg = d.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"gamma": 3, "kappa": 3, "memory": 2, "mode": "partition-only", "trials": 50, "seed": 4}"#,
    )
    .unwrap();
    let code = qcsc(&[
        "--config",
        s(&cfg),
        "--out-dir",
        s(d.path()),
        "experiment",
        "--trials",
        "20",
    ]);
    assert_eq!(code, 0);
    let doc = read_json(&d.path().join("experiment.json"));
    assert_eq!(doc["config"]["trials"], 20);
    assert_eq!(doc["config"]["gamma"], 3);
    assert_eq!(doc["config"]["seed"], 4);
    assert_eq!(doc["seed"], 4);
    assert_eq!(doc["result"]["shift"]["requested"], 20);

    let cfg2 = d.path().join("cfg2.json");
    fs::write(&cfg2, r#"{"gamma": 3, "kappa": 4, "m": 1, "Z": 8}"#).unwrap();
    let out = tempdir().unwrap();
    assert_eq!(
        qcsc(&[
            "--config",
            s(&cfg2),
            "--out-dir",
            s(out.path()),
            "construct",
            "--Z",
            "7"
        ]),
        0
    );
    let doc = read_json(&out.path().join("construct.json"));
    assert_eq!(doc["config"]["args"]["Z"], 7);
    assert_eq!(doc["config"]["args"]["kappa"], 4);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let d = tempdir().unwrap();
    let cfg = d.path().join("cfg.json");
    fs::write(&cfg, r#"{"gamma": 3, "kappa": 3, "memory": 1, "tirals": 5}"#).unwrap();
    assert_eq!(qcsc(&["--config", s(&cfg), "experiment"]), 2);
}
