use std::path::Path;
use std::process::Command;

use mckay::cli::{self, cache_load, pipeline_payload, CacheEntry};
use mckay::{GroupSpec, McKayData};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["mckay", "--no-cache"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn bin(cache: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(args)
        .env("MCKAY_CACHE", cache)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn dimg_of_binary_icosahedral() {
    let (code, out, _) = run(&["dimg", "binary-icosahedral"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"dim_g\": 248, \"type\": \"E~8\"}\n");
}

#[test]
fn char_at_depth_zero() {
    let (code, out, _) = run(&["char", "cyclic:2", "--hw", "1,0", "--depth", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"(0,0)\": 1}\n");
}

#[test]
fn char_with_oracle() {
    let (code, out, _) = run(&["char", "cyclic:3", "--hw", "1,1,0", "--depth", "4", "--oracle"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("{\"(0,0,0)\": 1"));
}

#[test]
fn quiver_dot_is_a_triangle() {
    let (code, out, _) = run(&["quiver", "cyclic:3", "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph "));
    assert_eq!(out.matches(" -- ").count(), 3);
    assert_eq!(out.matches("(d=1)").count(), 3);
    assert_eq!(out.matches("doublecircle").count(), 1);
    assert!(out.contains("ρ0 (d=1)"));
}

#[test]
fn json_dumps_carry_the_format_version() {
    for cmd in ["group", "chartab", "quiver"] {
        let (code, out, _) = run(&[cmd, "binary-dihedral:2"]);
        assert_eq!(code, 0, "{cmd}");
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["format_version"], 1, "{cmd}");
    }
    let (_, out, _) = run(&["group", "binary-dihedral:2"]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["order"], 8);
    assert_eq!(value["classes"].as_array().unwrap().len(), 5);
}

#[test]
fn roots_strata_fiber_and_drinfeld() {
    let (code, out, _) = run(&["roots", "binary-icosahedral"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["positive_roots"].as_array().unwrap().len(), 120);

    let (code, out, _) = run(&["strata", "cyclic:2", "--n", "4"]);
    assert_eq!(code, 0);
    let labels: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(labels.len(), 4);

    let (code, out, _) = run(&["fiber", "cyclic:2", "--v", "1,1", "--w", "1,0", "--v0", "0,0", "--lam", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"lagrangian_v\": [0, 0], \"transported_w\": [1, 0], \"punctual_parts\": [1], \"empty_flag\": false}\n"
    );

    let (code, out, _) = run(&["drinfeld", "--eigs", "2;z4,-z4"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["polynomials"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["group", "cyclic:1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let (code, _, err) = run(&["quiver", "dodecahedral"]);
    assert_eq!(code, 2);
    for family in ["cyclic:n", "binary-dihedral:m", "binary-tetrahedral", "binary-octahedral", "binary-icosahedral"] {
        assert!(err.contains(family), "{err}");
    }

    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["char", "cyclic:2", "--hw", "1,x", "--depth", "2"]).0, 2);
    assert_eq!(run(&["char", "cyclic:2", "--hw", "1,0,0", "--depth", "2"]).0, 2);
    assert_eq!(run(&["drinfeld", "--eigs", "0"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [&["chartab", "binary-octahedral"][..], &["strata", "cyclic:3", "--n", "6", "--w", "1,1,0"]] {
        assert_eq!(run(args).1, run(args).1);
    }
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (code, cold) = bin(dir.path(), &["chartab", "binary-tetrahedral"]);
    assert_eq!(code, 0);
    let (cached, payload) = cache_load(dir.path(), GroupSpec::BinaryTetrahedral).expect("cache entry written");
    let fresh = McKayData::compute(GroupSpec::BinaryTetrahedral).unwrap();
    assert_eq!(payload, pipeline_payload(&fresh).unwrap());
    assert_eq!(pipeline_payload(&cached).unwrap(), payload);
    let (code, warm) = bin(dir.path(), &["chartab", "binary-tetrahedral"]);
    assert_eq!(code, 0);
    assert_eq!(cold, warm);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let (_, cold) = bin(dir.path(), &["quiver", "cyclic:5"]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);

    std::fs::write(&files[0], "{ not json").unwrap();
    let (code, again) = bin(dir.path(), &["quiver", "cyclic:5"]);
    assert_eq!(code, 0);
    assert_eq!(again, cold);

    // well-formed entry whose payload claims another group
    let other = pipeline_payload(&McKayData::compute(GroupSpec::Cyclic(4)).unwrap()).unwrap();
    let entry = CacheEntry { key: "cyclic:5".into(), format_version: cli::FORMAT_VERSION, payload: other };
    std::fs::write(&files[0], serde_json::to_string(&entry).unwrap()).unwrap();
    assert!(cache_load(dir.path(), GroupSpec::Cyclic(5)).is_none());
    assert_eq!(bin(dir.path(), &["quiver", "cyclic:5"]).1, cold);
}
