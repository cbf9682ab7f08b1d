use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cubic_approx_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    ca_string_free(s);
    out
}

unsafe fn fermat() -> *mut CaHypersurface {
    let mut x = ptr::null_mut();
    assert_eq!(
        ca_hypersurface_parse(c("x0^3 + x1^3 + x2^3 + x3^3").as_ptr(), 4, &mut x),
        CaStatus::Ok
    );
    x
}

unsafe fn point(s: &str) -> *mut CaPoint {
    let mut p = ptr::null_mut();
    assert_eq!(ca_point_parse(c(s).as_ptr(), &mut p), CaStatus::Ok);
    p
}

#[test]
fn classify_through_handles() {
    unsafe {
        let x = fermat();
        assert_eq!(ca_hypersurface_coords(x), 4);
        let p = point("1:-1:0:0");
        let mut r = ptr::null_mut();
        assert_eq!(
            ca_classify(x, p, c("real").as_ptr(), 100, &mut r),
            CaStatus::Ok
        );
        let mut case = CaCase::Generic;
        assert_eq!(ca_classification_case(r, &mut case), CaStatus::Ok);
        assert_eq!(case, CaCase::OnRationalLine);
        let (mut n, mut d) = (0, 0);
        assert_eq!(ca_classification_alpha(r, &mut n, &mut d), CaStatus::Ok);
        assert_eq!((n, d), (1, 1));
        assert_eq!(ca_classification_is_proved(r), 1);
        let json = take(ca_classification_json(r));
        assert!(json.contains("\"case\": \"OnRationalLine\""));
        ca_classification_free(r);
        ca_point_free(p);
        ca_hypersurface_free(x);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let x = fermat();
        let p = point("1:1:1:1");
        assert_eq!(ca_hypersurface_contains(x, p), 0);
        let mut r = ptr::null_mut();
        assert_eq!(
            ca_classify(x, p, c("real").as_ptr(), 100, &mut r),
            CaStatus::PointNotOnX
        );
        assert!(r.is_null());
        let msg = CStr::from_ptr(ca_last_error_message()).to_str().unwrap();
        assert!(msg.starts_with("PointNotOnX"), "{msg}");
        assert_eq!(
            ca_classify(x, p, c("p=4").as_ptr(), 100, &mut r),
            CaStatus::Invalid
        );
        assert_eq!(
            ca_classify(ptr::null(), p, c("real").as_ptr(), 100, &mut r),
            CaStatus::NullPointer
        );
        let mut bad = ptr::null_mut();
        assert_eq!(
            ca_hypersurface_parse(c("x0^3 +").as_ptr(), 4, &mut bad),
            CaStatus::ParseError
        );
        assert_eq!(
            ca_point_parse(c("0:0").as_ptr(), &mut ptr::null_mut()),
            CaStatus::ZeroInput
        );
        assert_eq!(
            ca_point_parse(ptr::null(), &mut ptr::null_mut()),
            CaStatus::NullPointer
        );
        // a successful call clears the message
        let q = point("1:2");
        assert!(ca_last_error_message().is_null());
        ca_point_free(q);
        ca_point_free(p);
        ca_hypersurface_free(x);
        ca_hypersurface_free(ptr::null_mut());
    }
}

#[test]
fn distances_are_exact() {
    unsafe {
        let p = point("1:0");
        let q = point("5:1");
        let mut out = ptr::null_mut();
        assert_eq!(ca_dist(p, q, c("real").as_ptr(), &mut out), CaStatus::Ok);
        let d = take(out);
        let text = take(ca_point_to_string(q));
        assert_eq!(text, "5:1");
        assert!(d.contains('/'), "{d}");
        ca_point_free(p);
        ca_point_free(q);
    }
}

#[test]
fn problem_text_gives_report() {
    unsafe {
        let problem = c("form=x0^3 + x1^3 + x2^3 + x3^3\npoint=1:-1:0:0\nheight_bound=10\nliouville_bounds=5,10\n");
        let mut out = ptr::null_mut();
        assert_eq!(ca_run_report(problem.as_ptr(), &mut out), CaStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["classification"]["predicted_alpha"], "1");
        assert_eq!(v["verdict"]["kind"], "consistent");
        let mut out = ptr::null_mut();
        assert_eq!(
            ca_run_report(c("nonsense").as_ptr(), &mut out),
            CaStatus::ParseError
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/cubic_approx.h"
    ))
    .unwrap();
    for name in [
        "ca_last_error_message",
        "ca_version",
        "ca_string_free",
        "ca_hypersurface_parse",
        "ca_hypersurface_coords",
        "ca_hypersurface_contains",
        "ca_hypersurface_free",
        "ca_point_parse",
        "ca_point_to_string",
        "ca_point_free",
        "ca_dist",
        "ca_classify",
        "ca_classification_case",
        "ca_classification_alpha",
        "ca_classification_is_proved",
        "ca_classification_json",
        "ca_classification_free",
        "ca_run_report",
        "typedef struct CaHypersurface CaHypersurface",
        "CA_STATUS_POINT_NOT_ON_X = 14",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs the C smoke test against the static library when a C
/// compiler and the library are available.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libcubic_approx_ffi.a");
    let Some(cc) = ["cc", "clang", "gcc"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    }) else {
        eprintln!("skipped: no C compiler");
        return;
    };
    if !lib.exists() {
        eprintln!("skipped: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new(cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok 0.1.0"));
}
