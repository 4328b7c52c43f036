use std::ffi::{CStr, CString};
use std::path::Path;
use std::ptr;

use exangulate_ffi::*;

fn fixture(name: &str) -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(exg_last_error()) }.to_str().unwrap().to_string()
}

fn open(name: &str) -> *mut ExgSession {
    let text = fixture(name);
    let mut s = ptr::null_mut();
    let st = unsafe { exg_session_new(text.as_ptr(), 0, 0, EXG_DEFAULT_SEED, &mut s) };
    assert_eq!(st, ExgStatus::Ok, "{}", last_error());
    s
}

#[test]
fn default_seed_matches_engine() {
    assert_eq!(EXG_DEFAULT_SEED, exangulate::quiverrep::DEFAULT_SEED);
}

#[test]
fn dimensions_through_the_c_abi() {
    let s = open("a4-cluster.exg");
    let mut n = 0;
    assert_eq!(unsafe { exg_generator_count(s, &mut n) }, ExgStatus::Ok);
    assert_eq!(n, 6);
    let (one, four) = (CString::new("1").unwrap(), CString::new("4").unwrap());
    let mut d = 9;
    assert_eq!(unsafe { exg_ext_dim(s, one.as_ptr(), four.as_ptr(), &mut d) }, ExgStatus::Ok);
    assert_eq!(d, 1);
    assert_eq!(unsafe { exg_hom_dim(s, one.as_ptr(), four.as_ptr(), &mut d) }, ExgStatus::Ok);
    assert_eq!(d, 0);
    let bad = CString::new("5/6").unwrap();
    assert_eq!(unsafe { exg_hom_dim(s, bad.as_ptr(), four.as_ptr(), &mut d) }, ExgStatus::Semantic);
    assert!(last_error().contains("unknown object"));
    unsafe { exg_session_free(s) };
}

#[test]
fn localize_report_and_exit_code() {
    let s = open("a4-cluster.exg");
    let mut json = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { exg_localize_json(s, &mut json, &mut code) }, ExgStatus::Ok, "{}", last_error());
    assert_eq!(code, 20);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "fails weak-kc");
    unsafe { exg_string_free(json) };
    unsafe { exg_session_free(s) };
}

#[test]
fn errors_are_reported_not_raised() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { exg_session_new(ptr::null(), 0, 0, 0, &mut s) }, ExgStatus::NullPointer);
    let empty = CString::new("").unwrap();
    assert_eq!(unsafe { exg_session_new(empty.as_ptr(), 0, 0, 0, &mut s) }, ExgStatus::Semantic);
    assert_eq!(last_error(), "missing [quiver]");
    let broken = CString::new("[quiver\n").unwrap();
    assert_eq!(unsafe { exg_session_new(broken.as_ptr(), 0, 0, 0, &mut s) }, ExgStatus::Syntax);
    assert!(s.is_null());
    let mut n = 0;
    assert_eq!(unsafe { exg_generator_count(ptr::null(), &mut n) }, ExgStatus::NullPointer);
    unsafe { exg_session_free(ptr::null_mut()) };
    unsafe { exg_string_free(ptr::null_mut()) };
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/exangulate.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["exg_session_new", "exg_localize_json", "exg_check_json", "exg_last_error", "exg_string_free", "EXG_STATUS_OK"] {
        assert!(text.contains(f), "{f} missing from the header");
    }
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match std::process::Command::new(&cc).args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"]).arg(&header).status() {
        Ok(st) => assert!(st.success(), "{cc} rejected the header"),
        Err(e) => eprintln!("header syntax check not run: {cc}: {e}"),
    }
}
