use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use kato_ffi::*;

fn parse(text: &str) -> *mut KatoSequence {
    let c = CString::new(text).unwrap();
    let mut seq = ptr::null_mut();
    let status = unsafe { kato_sequence_parse(c.as_ptr(), 0, &mut seq) };
    assert_eq!(status, KatoStatus::Ok, "{text}");
    assert!(!seq.is_null());
    seq
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { kato_string_free(p) };
    s
}

fn last_error() -> String {
    let p = kato_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn basic_invariants() {
    let seq = parse("[s2 r2]");
    unsafe {
        assert_eq!(kato_sequence_b2(seq), 4);
        assert_eq!(kato_sequence_dloussky_number(seq), 10);

        let mut out = ptr::null_mut();
        assert_eq!(kato_sequence_symbolic(seq, &mut out), KatoStatus::Ok);
        assert_eq!(take_string(out), "[s2 r2]");

        let mut class = KatoClass::Enoki;
        assert_eq!(kato_sequence_class(seq, &mut class), KatoStatus::Ok);
        assert_eq!(class, KatoClass::IntermediateSimple);

        let mut index = 0;
        assert_eq!(kato_index(seq, &mut index), KatoStatus::Ok);
        assert_eq!(index, 1);

        let mut tip = ptr::null_mut();
        assert_eq!(kato_tip_multiplicity(seq, &mut tip), KatoStatus::Ok);
        assert_eq!(take_string(tip), "1/1");

        kato_sequence_free(seq);
    }
}

#[test]
fn index_two_from_entries() {
    let entries = [3u32, 3, 2, 2];
    let mut seq = ptr::null_mut();
    unsafe {
        assert_eq!(
            kato_sequence_from_entries(entries.as_ptr(), entries.len(), 0, &mut seq),
            KatoStatus::Ok
        );
        let mut index = 0;
        assert_eq!(kato_index(seq, &mut index), KatoStatus::Ok);
        assert_eq!(index, 2);
        let mut tip = ptr::null_mut();
        assert_eq!(kato_tip_multiplicity(seq, &mut tip), KatoStatus::Ok);
        assert_eq!(take_string(tip), "3/2");

        let mut d = KatoDeformation::default();
        assert_eq!(
            kato_deformation(seq, 1, &mut d),
            KatoStatus::EpsilonInconsistent
        );
        assert!(!last_error().is_empty());
        kato_sequence_free(seq);
    }
}

#[test]
fn deformation_matches_report() {
    let seq = parse("[s2 r2]");
    let mut d = KatoDeformation::default();
    unsafe {
        assert_eq!(kato_deformation(seq, 0, &mut d), KatoStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(kato_report_json(seq, 0, &mut json), KatoStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        let r = &report["deformation"];
        assert_eq!(d.b, r["b"].as_u64().unwrap());
        assert_eq!(d.chi_tangent, r["chi_tangent"].as_i64().unwrap());
        assert_eq!(d.chi_log, r["chi_log"].as_i64().unwrap());
        assert_eq!(d.h1_log, r["h1_log"].as_u64().unwrap());
        assert_eq!(d.h1_theta_minus_d, r["h1_theta_minus_D"].as_u64().unwrap());
        assert_eq!(d.h1_normal, r["h1_normal"].as_u64().unwrap());
        assert_eq!(d.h0_theta_d, r["h0_theta_D"].as_u64().unwrap());
        assert_eq!(d.via_double_cover, r["via_double_cover"].as_bool().unwrap());

        let mut dot = ptr::null_mut();
        assert_eq!(kato_graph_dot(seq, &mut dot), KatoStatus::Ok);
        assert!(take_string(dot).starts_with("graph"));
        kato_sequence_free(seq);
    }
}

#[test]
fn germ_eval_matches_direct_formula() {
    let seq = parse("[s2 r2]");
    let params = [1.0, 0.0, 0.5, 0.0, 0.25, 0.0];
    let z = [0.1, 0.0, 0.2, 0.0];
    let mut out = [0.0; 4];
    unsafe {
        assert_eq!(
            kato_germ_eval(seq, params.as_ptr(), 3, 0, z.as_ptr(), out.as_mut_ptr()),
            KatoStatus::Ok
        );
    }
    let (z1, z2) = (0.1f64, 0.2f64);
    let w = z1 * z2 * z2;
    let expected = z1 * z1 * z2.powi(5) + w + 0.5 * w * w + 0.25 * w.powi(3);
    assert!((out[0] - expected).abs() < 1e-15);
    assert!((out[2] - w).abs() < 1e-15);
    assert_eq!(out[1], 0.0);

    let mut short = [0.0; 4];
    let status =
        unsafe { kato_germ_eval(seq, params.as_ptr(), 2, 0, z.as_ptr(), short.as_mut_ptr()) };
    assert_eq!(status, KatoStatus::ParameterCount);

    let mut class = KatoHermitian::BiHermitianCandidate;
    unsafe {
        assert_eq!(
            kato_classify_hermitian(seq, 1.0, 0.0, &mut class),
            KatoStatus::Ok
        );
        assert_eq!(class, KatoHermitian::AnticanonicalCandidate);
        assert_eq!(
            kato_classify_hermitian(seq, 0.0, 0.0, &mut class),
            KatoStatus::ZeroParameter
        );
        kato_sequence_free(seq);
    }
}

#[test]
fn errors_and_null_handling() {
    let bad = CString::new("[s2 q2]").unwrap();
    let mut seq = ptr::null_mut();
    unsafe {
        assert_eq!(
            kato_sequence_parse(bad.as_ptr(), 0, &mut seq),
            KatoStatus::Parse
        );
        assert!(seq.is_null());
        assert!(!last_error().is_empty());

        let big = CString::new("[s10 r10]").unwrap();
        assert_eq!(
            kato_sequence_parse(big.as_ptr(), 8, &mut seq),
            KatoStatus::TooLarge
        );

        assert_eq!(
            kato_sequence_parse(ptr::null(), 0, &mut seq),
            KatoStatus::NullPointer
        );
        let mut index = 0;
        assert_eq!(kato_index(ptr::null(), &mut index), KatoStatus::NullPointer);
        assert_eq!(kato_sequence_b2(ptr::null()), 0);
        kato_sequence_free(ptr::null_mut());
        kato_string_free(ptr::null_mut());

        // success clears the previous message
        let ok = CString::new("[r2]").unwrap();
        assert_eq!(
            kato_sequence_parse(ok.as_ptr(), 0, &mut seq),
            KatoStatus::Ok
        );
        assert!(kato_last_error_message().is_null());
        assert_eq!(kato_index(seq, &mut index), KatoStatus::Unavailable);
        let mut tip = ptr::null_mut();
        assert_eq!(kato_tip_multiplicity(seq, &mut tip), KatoStatus::NotSimple);
        kato_sequence_free(seq);
    }
    let msg = unsafe { CStr::from_ptr(kato_status_message(KatoStatus::NotSimple)) };
    assert!(!msg.to_bytes().is_empty());
}

fn header_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/kato.h")
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(header_path()).expect("build script writes the header");
    for name in [
        "kato_sequence_parse",
        "kato_sequence_from_entries",
        "kato_sequence_free",
        "kato_sequence_b2",
        "kato_sequence_dloussky_number",
        "kato_sequence_symbolic",
        "kato_sequence_class",
        "kato_index",
        "kato_tip_multiplicity",
        "kato_report_json",
        "kato_graph_dot",
        "kato_deformation",
        "kato_germ_eval",
        "kato_classify_hermitian",
        "kato_string_free",
        "kato_last_error_message",
        "kato_status_message",
        "typedef struct KatoSequence KatoSequence",
        "KATO_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

const SMOKE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "kato.h"

int main(void) {
    KatoSequence *seq = NULL;
    if (kato_sequence_parse("[s1 s1 r2]", 0, &seq) != KATO_STATUS_OK) return 1;
    uint64_t index = 0;
    if (kato_index(seq, &index) != KATO_STATUS_OK || index != 2) return 2;
    char *tip = NULL;
    if (kato_tip_multiplicity(seq, &tip) != KATO_STATUS_OK || strcmp(tip, "3/2") != 0) return 3;
    kato_string_free(tip);
    KatoDeformation d;
    if (kato_deformation(seq, 1, &d) != KATO_STATUS_EPSILON_INCONSISTENT) return 4;
    if (kato_last_error_message() == NULL) return 5;
    kato_sequence_free(seq);
    printf("ok\n");
    return 0;
}
"#;

/// Compiles and runs a C program against the static library. Skipped when
/// no C compiler is available.
#[test]
fn c_smoke_test() {
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&compiler).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libkato_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("kato-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, SMOKE).unwrap();
    let status = Command::new(&compiler)
        .arg(&src)
        .arg("-I")
        .arg(header_path().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke test failed to compile");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "smoke exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
    let _ = std::fs::remove_dir_all(&dir);
}
