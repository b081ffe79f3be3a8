use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rectchar_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a returned string.
unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    rc_string_free(s);
    out
}

unsafe fn last_error() -> String {
    take(rc_last_error_message())
}

#[test]
fn characters() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(rc_chi(c("3,3").as_ptr(), c("3,1,1,1").as_ptr(), &mut out), RcStatus::Ok);
        assert_eq!(take(out), "-1");
        assert_eq!(rc_normalized_character(c("2,2,2").as_ptr(), c("2").as_ptr(), &mut out), RcStatus::Ok);
        assert_eq!(take(out), "-6");
        assert!(rc_last_error_message().is_null());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(rc_chi(c("1,2").as_ptr(), c("1").as_ptr(), &mut out), RcStatus::InvalidArgument);
        assert!(last_error().contains("partition"));
        assert_eq!(rc_chi(ptr::null(), c("1").as_ptr(), &mut out), RcStatus::NullPointer);
        assert_eq!(rc_chi(c("2").as_ptr(), c("1").as_ptr(), ptr::null_mut()), RcStatus::NullPointer);
        let mut handle = ptr::null_mut();
        assert_eq!(rc_poly_factorization(c("11").as_ptr(), &mut handle), RcStatus::CapExceeded);
        assert!(handle.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(rc_chi(bad.as_ptr().cast(), c("1").as_ptr(), &mut out), RcStatus::InvalidUtf8);
    }
}

#[test]
fn checks() {
    unsafe {
        let mut flag = false;
        assert_eq!(rc_theorem1_check(3, 4, c("3,2").as_ptr(), &mut flag), RcStatus::Ok);
        assert!(flag);
        assert_eq!(rc_lemma_check(c("4,3,1").as_ptr(), 4, 6, &mut flag), RcStatus::Ok);
        assert!(flag);
        assert_eq!(rc_lemma_check(c("5").as_ptr(), 2, 2, &mut flag), RcStatus::InvalidArgument);

        let mut json = ptr::null_mut();
        assert_eq!(rc_conjecture_check(2, c("2,1").as_ptr(), &mut flag, &mut json), RcStatus::Ok);
        assert!(flag);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["coefficient_sum"], "24");
        assert_eq!(rc_conjecture_check(2, c("1").as_ptr(), &mut flag, ptr::null_mut()), RcStatus::Ok);
    }
}

#[test]
fn polynomial_handles() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(rc_poly_fk(2, 2, true, &mut f), RcStatus::Ok);
        let mut n = 0usize;
        assert_eq!(rc_poly_num_vars(f, &mut n), RcStatus::Ok);
        assert_eq!(n, 4);
        let mut s = ptr::null_mut();
        assert_eq!(rc_poly_to_string(f, &mut s), RcStatus::Ok);
        assert_eq!(take(s), "p1^2*q1 + 2*p1*p2*q2 + p1*q1^2 + p2^2*q2 + p2*q2^2");
        assert_eq!(rc_poly_to_json(f, &mut s), RcStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["variables"][0], "p1");
        assert_eq!(v["terms"].as_array().unwrap().len(), 5);
        let point = [1i64, 1, 1, 1];
        assert_eq!(rc_poly_eval(f, point.as_ptr(), 4, &mut s), RcStatus::Ok);
        assert_eq!(take(s), "6");
        assert_eq!(rc_poly_eval(f, point.as_ptr(), 3, &mut s), RcStatus::InvalidArgument);
        rc_poly_free(f);

        let mut g = ptr::null_mut();
        assert_eq!(rc_poly_gk(1, 3, true, &mut g), RcStatus::Ok);
        assert_eq!(rc_poly_to_string(g, &mut s), RcStatus::Ok);
        assert_eq!(take(s), "p^3*q + 3*p^2*q^2 + p*q^3");
        rc_poly_free(g);

        let mut h = ptr::null_mut();
        assert_eq!(rc_poly_f_mu(1, c("2").as_ptr(), &mut h), RcStatus::Ok);
        assert_eq!(rc_poly_to_string(h, &mut s), RcStatus::Ok);
        assert_eq!(take(s), "-p^2*q + p*q^2");
        rc_poly_free(h);
        rc_poly_free(ptr::null_mut());
        assert_eq!(rc_poly_to_string(ptr::null(), &mut s), RcStatus::NullPointer);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/rectchar.h")).unwrap();
    for name in [
        "rc_chi",
        "rc_normalized_character",
        "rc_theorem1_check",
        "rc_lemma_check",
        "rc_conjecture_check",
        "rc_poly_factorization",
        "rc_poly_fk",
        "rc_poly_gk",
        "rc_poly_f_mu",
        "rc_poly_to_string",
        "rc_poly_to_json",
        "rc_poly_eval",
        "rc_poly_free",
        "rc_string_free",
        "rc_last_error_message",
        "typedef struct RcPoly RcPoly;",
        "RC_STATUS_CAP_EXCEEDED = 4",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles a C program against the header and static library when a C
/// compiler and the archive are available.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let archive = profile_dir.join("librectchar_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = std::env::temp_dir().join(format!("rectchar_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).contains("c smoke: ok"));
}
