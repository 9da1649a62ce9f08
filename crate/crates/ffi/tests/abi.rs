use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;
use superhopf_ffi::*;

fn resolve(expr: &str) -> *mut ShRecord {
    let c = CString::new(expr).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sh_record_resolve(c.as_ptr(), &mut out) }, ShStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take(s: *mut c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sh_string_free(s) };
    owned
}

#[test]
fn resolve_verify_and_free() {
    let r = resolve("H1");
    let (mut n0, mut n1) = (0usize, 0usize);
    assert_eq!(unsafe { sh_record_dims(r, &mut n0, &mut n1) }, ShStatus::Ok);
    assert_eq!((n0, n1), (2, 2));
    let mut holds = false;
    assert_eq!(unsafe { sh_verify(r, &mut holds) }, ShStatus::Ok);
    assert!(holds);
    unsafe { sh_record_free(r) };
}

#[test]
fn unknown_ids_report_through_last_error() {
    let c = CString::new("no-such-record").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sh_record_resolve(c.as_ptr(), &mut out) }, ShStatus::UnknownId);
    assert!(out.is_null());
    let msg = unsafe { CStr::from_ptr(sh_last_error()) }.to_str().unwrap();
    assert!(msg.contains("no-such-record"), "{msg}");
}

#[test]
fn null_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sh_record_resolve(ptr::null(), &mut out) }, ShStatus::NullPointer);
    let mut holds = false;
    assert_eq!(unsafe { sh_verify(ptr::null(), &mut holds) }, ShStatus::NullPointer);
    let r = resolve("LambdaK");
    assert_eq!(unsafe { sh_verify(r, ptr::null_mut()) }, ShStatus::NullPointer);
    unsafe { sh_record_free(r) };
}

#[test]
fn json_round_trip() {
    let r = resolve("A_{3|2}^1");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sh_record_to_json(r, &mut s) }, ShStatus::Ok);
    let json = CString::new(take(s)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { sh_record_from_json(json.as_ptr(), &mut back) }, ShStatus::Ok);
    let mut result = ShIso::Undetermined;
    assert_eq!(unsafe { sh_find_isomorphism(r, back, &mut result, ptr::null_mut()) }, ShStatus::Ok);
    assert_eq!(result, ShIso::Iso);
    unsafe {
        sh_record_free(r);
        sh_record_free(back);
    }
}

#[test]
fn malformed_json_is_a_parse_error() {
    let bad = CString::new("{not json").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sh_record_from_json(bad.as_ptr(), &mut out) }, ShStatus::Parse);
}

#[test]
fn antipode_and_dual_isomorphism() {
    let h2 = resolve("H2");
    let mut status = ShAntipode::NotFound;
    let mut images = ptr::null_mut();
    assert_eq!(unsafe { sh_antipode(h2, &mut status, &mut images) }, ShStatus::Ok);
    assert_eq!(status, ShAntipode::Found);
    let images: Vec<String> = serde_json::from_str(&take(images)).unwrap();
    assert_eq!(images.len(), 4);

    let (h4, d) = (resolve("H4"), resolve("dual(H2)"));
    let mut result = ShIso::Undetermined;
    let mut detail = ptr::null_mut();
    assert_eq!(unsafe { sh_find_isomorphism(h4, d, &mut result, &mut detail) }, ShStatus::Ok);
    assert_eq!(result, ShIso::Iso);
    assert!(take(detail).contains("\"iso\""));
    unsafe {
        sh_record_free(h2);
        sh_record_free(h4);
        sh_record_free(d);
    }
}

#[test]
fn fingerprint_json_names_its_fields() {
    let r = resolve("LambdaK");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sh_fingerprint_json(r, &mut s) }, ShStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["dim_odd_primitives"], 1);
    unsafe { sh_record_free(r) };
}

#[test]
fn catalog_enumeration() {
    let n = sh_catalog_len();
    assert!(n > 100);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sh_catalog_id(0, &mut s) }, ShStatus::Ok);
    assert!(!take(s).is_empty());
    assert_eq!(unsafe { sh_catalog_id(n, &mut s) }, ShStatus::UnknownId);
}

/// Compiles a small C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/superhopf.h");
    assert!(header.exists(), "header not generated");
    let lib = std::env::current_exe().unwrap().with_file_name("libsuperhopf_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include "superhopf.h"
#include <stdio.h>
int main(void) {
    ShRecord *r = NULL;
    if (sh_record_resolve("H3", &r) != SH_STATUS_OK) return 1;
    bool holds = false;
    if (sh_verify(r, &holds) != SH_STATUS_OK || !holds) return 2;
    ShAntipode a;
    if (sh_antipode(r, &a, NULL) != SH_STATUS_OK || a != SH_ANTIPODE_FOUND) return 3;
    sh_record_free(r);
    if (sh_record_resolve("missing", &r) != SH_STATUS_UNKNOWN_ID) return 4;
    printf("%s\n", sh_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = tmp.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    assert!(String::from_utf8_lossy(&run.stdout).contains("missing"));
}
