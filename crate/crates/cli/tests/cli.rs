use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};
use tropic_cli::run;

const CONIC: &str = "-1*x^2 + 1*x*y + -1*y^2 + 1*x + 1*y + 0";

fn ok(args: &[&str]) -> Value {
    let mut argv = vec!["tropic"];
    argv.extend_from_slice(args);
    let (code, out) = run(argv);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

fn code(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["tropic"];
    argv.extend_from_slice(args);
    let (code, out) = run(argv);
    (code, serde_json::from_str(&out).unwrap())
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn line_curve() {
    let c = ok(&["curve", "--expr", "3*x + 2*y + 0"]);
    assert_eq!(c["vertices"], json!([["-3", "-2"]]));
    assert_eq!(c["rays"].as_array().unwrap().len(), 3);
}

#[test]
fn kontsevich_and_eval() {
    assert_eq!(ok(&["kontsevich", "--dmax", "3"]), json!({"1": "1", "2": "1", "3": "12"}));
    assert_eq!(ok(&["eval", "--expr", "0", "--at", "5/2,7"]), json!("0"));
    assert_eq!(ok(&["eval", "--expr", "3*x + 2*y + 0", "--at", "1/2,-1"]), json!("7/2"));
}

#[test]
fn outputs_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let poly = ok(&["parse", "--expr", CONIC]);
    let poly_file = write(dir.path(), "poly.json", &poly);
    assert_eq!(ok(&["eval", "--input", &poly_file, "--at", "0,0"]), json!("1"));

    let curve = ok(&["curve", "--input", &poly_file]);
    let curve_file = write(dir.path(), "curve.json", &curve);
    assert_eq!(ok(&["genus", "--input", &curve_file]), json!({"d": 2, "g": 0}));
    assert_eq!(ok(&["curve", "--input", &curve_file]), curve);

    let sub = ok(&["subdivision", "--expr", CONIC]);
    let sub_file = write(dir.path(), "sub.json", &sub);
    assert_eq!(ok(&["regular", "--input", &sub_file])["regular"], json!(true));

    let u = ok(&["union", "--expr", "x + y + 0", "--expr", "-1*x + 2*y + 0"]);
    let u_file = write(dir.path(), "union.json", &u);
    let parts = ok(&["decompose", "--input", &u_file]);
    assert_eq!(parts["components"].as_array().unwrap().len(), 2);
}

#[test]
fn twisted_triangulation_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let sub = serde_json::to_value(tropic::fixtures::twisted_triangulation()).unwrap();
    let file = write(dir.path(), "twisted.json", &sub);
    assert_eq!(ok(&["regular", "--input", &file]), json!({"regular": false, "witness": null}));
    // the same tiling written by hand, cells starting at arbitrary corners
    let by_hand = json!({
        "polygon": [[0, 0], [4, 0], [0, 4]],
        "cells": [
            [[1, 1], [2, 1], [1, 2]],
            [[0, 0], [4, 0], [2, 1]],
            [[0, 0], [2, 1], [1, 1]],
            [[4, 0], [0, 4], [1, 2]],
            [[4, 0], [1, 2], [2, 1]],
            [[0, 4], [0, 0], [1, 1]],
            [[0, 4], [1, 1], [1, 2]]
        ]
    });
    let file = write(dir.path(), "by_hand.json", &by_hand);
    assert_eq!(ok(&["regular", "--input", &file]), json!({"regular": false, "witness": null}));
}

#[test]
fn intersections() {
    let hits = ok(&["intersect", "--expr", "x + y + 0", "--expr", "2*x + y + 1"]);
    assert_eq!(hits, json!([{"pt": ["-1", "0"], "mult": 1}]));
    let stable = ok(&["stable", "--expr", CONIC, "--expr", CONIC]);
    let stable = stable.as_array().unwrap();
    assert_eq!(stable.len(), 4);
    assert!(stable.iter().all(|p| p["mult"] == json!(1)));
    let (c, e) = code(&["intersect", "--expr", "x + y + 0", "--expr", "x + y + 1"]);
    assert_eq!(c, 1);
    assert!(e["error"].as_str().unwrap().contains("non-transverse"));
}

#[test]
fn genus_and_smoothness() {
    let r = ok(&["genus", "--expr", "x^3 + 3*x^2*y + 2*x*y^2 + y^3 + 3*x^2 + 20*x*y + 3*y^2 + 2*x + 2*y + 0"]);
    assert_eq!((r["d"].clone(), r["g"].clone()), (json!(3), json!(1)));
    assert_eq!(ok(&["smooth", "--expr", CONIC]), json!({"smooth": true}));
    assert_eq!(ok(&["smooth", "--expr", "x^2 + y^2 + 0"]), json!({"smooth": false}));
}

#[test]
fn counting_is_reproducible() {
    let a = run(["tropic", "count", "--degree", "2", "--seed", "9", "--welschinger"]);
    let b = run(["tropic", "count", "--degree", "2", "--seed", "9", "--welschinger"]);
    assert_eq!(a, b);
    let r: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!((r["n_complex"].clone(), r["seed"].clone()), (json!(1), json!(9)));
    let inv = ok(&["count", "--degree", "1", "--seed", "0", "--trials", "4"]);
    assert_eq!(inv["consistent"], json!(true));
    assert_eq!(inv["trials"].as_array().unwrap().len(), 4);
}

#[test]
fn cubic_addition() {
    let cubic = "x^3 + 3*x^2*y + 2*x*y^2 + y^3 + 3*x^2 + 20*x*y + 3*y^2 + 2*x + 2*y + 0";
    let s = ok(&["cubic-add", "--expr", cubic, "--loop", "1/3,2/5,7/2"]);
    // adding the base point changes nothing
    let back = ok(&["cubic-add", "--expr", cubic, "--loop", "1/3,1/3,2/5"]);
    assert_eq!(back["sum"], json!("2/5"));
    let swapped = ok(&["cubic-add", "--expr", cubic, "--loop", "1/3,7/2,2/5"]);
    assert_eq!(s, swapped);
    let (c, _) = code(&["cubic-add", "--expr", CONIC, "--loop", "0,1,2"]);
    assert_eq!(c, 1);
}

#[test]
fn kapranov() {
    let dir = tempfile::tempdir().unwrap();
    let series = |terms: &[(&str, &str)]| {
        json!({"terms": terms.iter().map(|(q, c)| json!({"q": q, "c": c})).collect::<Vec<_>>(), "trunc": "20"})
    };
    let input = json!({
        "f": {"terms": [
            {"i": 1, "j": 0, "a": series(&[("-3", "1")])},
            {"i": 0, "j": 1, "a": series(&[("-2", "1")])},
            {"i": 0, "j": 0, "a": series(&[("0", "-1")])}
        ]},
        "point": {"z1": series(&[("4", "1")]), "z2": series(&[("2", "1"), ("3", "-1")])}
    });
    let file = write(dir.path(), "k.json", &input);
    let r = ok(&["kapranov", "--input", &file]);
    assert_eq!(r["is_root"], json!(true));
    assert_eq!(r["image_on_corner_locus"], json!(true));
    assert_eq!(r["image"], json!(["-4", "-2"]));
}

#[test]
fn rendering() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("line.svg");
    let out = out.to_str().unwrap();
    ok(&["render", "--expr", "x + y + 0", "--out", out]);
    let svg = std::fs::read_to_string(out).unwrap();
    assert_eq!(svg.matches("<line").count(), 3);
    assert!(!svg.contains("<text"));

    ok(&["render", "--expr", "x^2 + y^2 + 0", "--out", out]);
    assert!(std::fs::read_to_string(out).unwrap().contains(">2</text>"));

    ok(&["render", "--expr", CONIC, "--dual", "--out", out]);
    let first = std::fs::read_to_string(out).unwrap();
    assert_eq!(first.matches("<polygon").count(), 4);
    ok(&["render", "--expr", CONIC, "--dual", "--out", out]);
    assert_eq!(std::fs::read_to_string(out).unwrap(), first);
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(code(&["frobnicate"]).0, 2);
    assert_eq!(code(&["count", "--degree", "2"]).0, 2);
    assert_eq!(code(&["union", "--expr", "x + 0"]).0, 2);
    assert_eq!(code(&["eval", "--expr", "x + 0", "--at", "1"]).0, 2);
    assert_eq!(code(&["curve", "--expr", "x ++ 0"]).0, 1);
    assert_eq!(code(&["curve", "--input", "/nonexistent.json"]).0, 1);
    assert_eq!(code(&["count", "--degree", "7", "--seed", "1"]).0, 1);
    let (c, v) = code(&["kontsevich", "--dmax", "0"]);
    assert_eq!(c, 2);
    assert!(v["error"].is_string());
}

#[test]
fn binary() {
    let out = Command::new(env!("CARGO_BIN_EXE_tropic")).args(["kontsevich", "--dmax", "4"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"1\":\"1\",\"2\":\"1\",\"3\":\"12\",\"4\":\"620\"}\n");
    let out = Command::new(env!("CARGO_BIN_EXE_tropic")).args(["nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
