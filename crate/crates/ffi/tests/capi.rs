use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use mckay_ffi::*;

fn group(spec: &str) -> *mut McKayGroup {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { mckay_group_new(spec.as_ptr(), &mut g) };
    assert_eq!(status, McKayStatus::Ok);
    assert!(!g.is_null());
    g
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mckay_string_free(s) };
    out
}

fn last_error() -> String {
    let p = mckay_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn binary_icosahedral_through_the_c_abi() {
    let g = group("binary-icosahedral");
    let (mut order, mut size, mut dim) = (0usize, 0usize, 0usize);
    unsafe {
        assert_eq!(mckay_group_order(g, &mut order), McKayStatus::Ok);
        assert_eq!(mckay_quiver_size(g, &mut size), McKayStatus::Ok);
        assert_eq!(mckay_dim_g(g, &mut dim), McKayStatus::Ok);
    }
    assert_eq!((order, size, dim), (120, 9, 248));

    let mut delta = vec![0i64; size];
    let mut adjacency = vec![0i64; size * size];
    unsafe {
        assert_eq!(mckay_quiver_delta(g, delta.as_mut_ptr(), delta.len()), McKayStatus::Ok);
        assert_eq!(mckay_quiver_adjacency(g, adjacency.as_mut_ptr(), adjacency.len()), McKayStatus::Ok);
    }
    assert_eq!(delta.iter().map(|d| d * d).sum::<i64>(), 120);
    // C delta = 0
    for i in 0..size {
        let row: i64 = (0..size).map(|j| adjacency[i * size + j] * delta[j]).sum();
        assert_eq!(2 * delta[i], row);
    }

    let mut s = ptr::null_mut();
    unsafe { assert_eq!(mckay_ade_type(g, &mut s), McKayStatus::Ok) };
    assert_eq!(take_string(s), "E~8");
    unsafe { mckay_group_free(g) };
}

#[test]
fn json_getters() {
    let g = group("cyclic:2");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(mckay_chartab_json(g, &mut s), McKayStatus::Ok);
        assert!(take_string(s).contains("\"degrees\": [1, 1]"));
        assert_eq!(mckay_quiver_json(g, &mut s), McKayStatus::Ok);
        assert!(take_string(s).contains("\"ade_type\": \"A~1\""));

        let w = [1i64, 0];
        assert_eq!(mckay_multiplicities_json(g, w.as_ptr(), 2, 0, &mut s), McKayStatus::Ok);
        assert_eq!(take_string(s), "{\"(0,0)\": 1}");

        assert_eq!(mckay_strata_json(g, 4, w.as_ptr(), 2, &mut s), McKayStatus::Ok);
        let labels: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(labels.as_array().unwrap().len(), 4);

        let (v, v0, lam) = ([1i64, 1], [0i64, 0], [1u64]);
        assert_eq!(
            mckay_fiber_json(g, v.as_ptr(), w.as_ptr(), v0.as_ptr(), 2, lam.as_ptr(), 1, &mut s),
            McKayStatus::Ok
        );
        assert!(take_string(s).contains("\"lagrangian_v\": [0, 0]"));
        mckay_group_free(g);
    }
}

#[test]
fn error_codes() {
    let bad = CString::new("cyclic:1").unwrap();
    let unknown = CString::new("tetrahedral").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(mckay_group_new(bad.as_ptr(), &mut g), McKayStatus::UnknownSpec);
        assert!(g.is_null());
        assert_eq!(mckay_group_new(unknown.as_ptr(), &mut g), McKayStatus::UnknownSpec);
        assert!(last_error().contains("binary-icosahedral"));
        assert_eq!(mckay_group_new(ptr::null(), &mut g), McKayStatus::NullPointer);

        let mut order = 0usize;
        assert_eq!(mckay_group_order(ptr::null(), &mut order), McKayStatus::NullPointer);

        let g = group("cyclic:3");
        let mut small = [0i64; 2];
        assert_eq!(mckay_quiver_delta(g, small.as_mut_ptr(), small.len()), McKayStatus::BufferTooSmall);

        let mut s = ptr::null_mut();
        let w = [0i64, 0, 0];
        assert_eq!(mckay_multiplicities_json(g, w.as_ptr(), 3, 2, &mut s), McKayStatus::InvalidArgument);
        assert!(s.is_null());
        mckay_group_free(g);
        mckay_group_free(ptr::null_mut());
        mckay_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("mckay.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for symbol in ["mckay_group_new", "mckay_group_free", "mckay_last_error", "MCKAY_STATUS_OK"] {
        assert!(text.contains(symbol), "{symbol} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler found; skipping syntax check");
        return;
    };
    assert!(status.success());
}
