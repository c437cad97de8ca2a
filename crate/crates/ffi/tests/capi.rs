use std::ffi::{CStr, CString};
use std::ptr;

use laplace_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn text(p: *const std::ffi::c_char) -> String {
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn graph(spec: &str) -> *mut LapGraph {
    let mut g = ptr::null_mut();
    let status = unsafe { lap_graph_new(c(spec).as_ptr(), &mut g) };
    assert_eq!(status, LapStatus::Ok, "{}", text(lap_last_error()));
    g
}

#[test]
fn line_delta_solution_through_the_c_api() {
    let g = graph("z");
    let mut report = ptr::null_mut();
    let status =
        unsafe { lap_solve_on_ball(g, c("delta").as_ptr(), 1, c("0").as_ptr(), &mut report) };
    assert_eq!(status, LapStatus::Ok);
    unsafe {
        assert!(lap_report_residual_zero(report));
        assert_eq!(lap_report_len(report), 3);
        let pairs: Vec<(String, String)> = (0..3)
            .map(|i| {
                (
                    text(lap_report_label(report, i)),
                    text(lap_report_value(report, i)),
                )
            })
            .collect();
        assert_eq!(
            pairs,
            [("0", "2"), ("-1", "1"), ("1", "1")].map(|(a, b)| (a.to_owned(), b.to_owned()))
        );
        assert!(lap_report_label(report, 3).is_null());
        let json: serde_json::Value = serde_json::from_str(&text(lap_report_json(report))).unwrap();
        assert_eq!(json["residual_zero"], true);
        lap_report_free(report);
        lap_graph_free(g);
    }
}

#[test]
fn finite_graph_singularity_is_its_own_status() {
    let g = graph("c4");
    let mut report = ptr::null_mut();
    let status =
        unsafe { lap_solve_on_ball(g, c("delta").as_ptr(), 2, c("0").as_ptr(), &mut report) };
    assert_eq!(status, LapStatus::SingularFinite);
    assert!(report.is_null());
    assert!(text(lap_last_error()).contains("singular"));
    unsafe { lap_graph_free(g) };
}

#[test]
fn coherent_solution_and_certificate() {
    let g = graph(r#"{"family":"tree","degree":3}"#);
    let mut report = ptr::null_mut();
    let status = unsafe {
        lap_coherent_solution(
            g,
            c("delta").as_ptr(),
            2,
            8,
            3,
            c("0").as_ptr(),
            &mut report,
        )
    };
    assert_eq!(status, LapStatus::Ok, "{}", text(lap_last_error()));
    let mut size = 0;
    unsafe {
        assert!(lap_report_residual_zero(report));
        assert_eq!(lap_graph_ball_size(g, 3, &mut size), LapStatus::Ok);
        assert_eq!(lap_report_len(report), size);
        lap_report_free(report);

        let mut strict = false;
        let mut det = ptr::null_mut();
        assert_eq!(
            lap_certificate(g, 2, c("distance").as_ptr(), &mut strict, &mut det),
            LapStatus::Ok
        );
        assert!(strict);
        assert_ne!(text(det), "0");
        lap_string_free(det);
        lap_graph_free(g);
    }
}

#[test]
fn error_statuses() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(lap_graph_new(ptr::null(), &mut g), LapStatus::NullPointer);
        assert_eq!(
            lap_graph_new(c("moebius").as_ptr(), &mut g),
            LapStatus::ParseError
        );
        assert!(g.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(
            lap_graph_new(bad.as_ptr().cast(), &mut g),
            LapStatus::InvalidUtf8
        );
    }
    let z = graph("z");
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(
            lap_solve_on_ball(
                z,
                c("{\"kind\":1}").as_ptr(),
                1,
                c("0").as_ptr(),
                &mut report
            ),
            LapStatus::ParseError
        );
        assert_eq!(
            lap_solve_on_ball(z, c("delta").as_ptr(), 1, c("-1").as_ptr(), &mut report),
            LapStatus::ParseError
        );
        assert_eq!(
            lap_coherent_solution(
                z,
                c("delta").as_ptr(),
                1,
                1,
                3,
                c("0").as_ptr(),
                &mut report
            ),
            LapStatus::NotStabilized
        );
        lap_graph_free(z);
        lap_graph_free(ptr::null_mut());
        lap_report_free(ptr::null_mut());
        lap_string_free(ptr::null_mut());
        assert!(!lap_report_residual_zero(ptr::null()));
    }
}

#[test]
fn generated_header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/laplace.h")).unwrap();
    for symbol in [
        "lap_graph_new",
        "lap_graph_free",
        "lap_solve_on_ball",
        "lap_coherent_solution",
        "lap_certificate",
        "lap_report_json",
        "lap_last_error",
        "LAP_STATUS_SINGULAR_FINITE",
        "typedef struct LapGraph LapGraph",
    ] {
        assert!(header.contains(symbol), "missing {symbol}");
    }
}

#[test]
fn c_program_links_against_static_library() {
    use std::path::PathBuf;
    use std::process::Command;

    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/capi-* -> target/<profile>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .and_then(|p| p.parent())
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("liblaplace_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("laplace_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke exit {:?}", out.status.code());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["solution"]["0"], "2");
}
