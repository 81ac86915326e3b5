use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use quiver_chow_ffi::*;

fn last_error() -> String {
    let p = qc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn kronecker_handle_round_trip() {
    unsafe {
        let mut handle = ptr::null_mut();
        assert_eq!(qc_moduli_new_kronecker(3, 2, 3, &mut handle), QcStatus::Ok);
        assert!(qc_last_error().is_null());
        let mut dim = 0;
        assert_eq!(qc_moduli_dimension(handle, &mut dim), QcStatus::Ok);
        assert_eq!(dim, 6);

        let mut count = 0;
        assert_eq!(qc_moduli_chow_ranks(handle, ptr::null_mut(), 0, &mut count), QcStatus::Ok);
        let mut ranks = vec![0usize; count];
        assert_eq!(qc_moduli_chow_ranks(handle, ranks.as_mut_ptr(), count, &mut count), QcStatus::Ok);
        assert_eq!(ranks, vec![1, 1, 3, 3, 3, 1, 1]);

        let mut s = ptr::null_mut();
        assert_eq!(qc_moduli_degree(handle, &mut s), QcStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "57");
        qc_string_free(s);

        assert_eq!(qc_moduli_report_json(handle, &mut s), QcStatus::Ok);
        let json = CStr::from_ptr(s).to_str().unwrap().to_owned();
        qc_string_free(s);
        assert!(json.contains(r#""hilbert_numerator":["1","13","29","13","1"]"#), "{json}");
        qc_moduli_free(handle);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut handle = ptr::null_mut();
        assert_eq!(qc_moduli_new_kronecker(3, 2, 2, &mut handle), QcStatus::AssumptionViolated);
        assert!(handle.is_null());
        assert!(last_error().contains("coprime"));

        let spec = CString::new(r#"{"vertices": 2, "arrows": [[0, 7]], "d": [1, 1]}"#).unwrap();
        assert_eq!(qc_moduli_new_from_json(spec.as_ptr(), &mut handle), QcStatus::InvalidInput);
        let spec = CString::new("not json").unwrap();
        assert_eq!(qc_moduli_new_from_json(spec.as_ptr(), &mut handle), QcStatus::InvalidInput);

        assert_eq!(qc_moduli_new_kronecker(3, 1, 1, ptr::null_mut()), QcStatus::NullPointer);
        assert_eq!(qc_moduli_dimension(ptr::null(), &mut 0), QcStatus::NullPointer);
        qc_moduli_free(ptr::null_mut());
        qc_string_free(ptr::null_mut());
    }
}

#[test]
fn json_spec_builds() {
    unsafe {
        let spec = CString::new(r#"{"vertices": 2, "arrows": [[0,1],[0,1],[0,1],[0,1]], "d": [1,2]}"#).unwrap();
        let mut handle = ptr::null_mut();
        assert_eq!(qc_moduli_new_from_json(spec.as_ptr(), &mut handle), QcStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(qc_moduli_degree(handle, &mut s), QcStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "2");
        qc_string_free(s);
        qc_moduli_free(handle);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(qc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/quiver_chow.h")).unwrap();
    for name in [
        "qc_moduli_new_kronecker",
        "qc_moduli_new_from_json",
        "qc_moduli_free",
        "qc_moduli_report_json",
        "qc_last_error",
        "qc_string_free",
        "QC_STATUS_ASSUMPTION_VIOLATED",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compile and run the C smoke test against the shared library, when a C
/// compiler is around.
#[test]
fn c_program_links_against_the_library() {
    let profile_dir: PathBuf = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join(format!("{}quiver_chow_ffi{}", std::env::consts::DLL_PREFIX, std::env::consts::DLL_SUFFIX));
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or no shared library at {}", lib.display());
        return;
    }
    let manifest = env!("CARGO_MANIFEST_DIR");
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(format!("{manifest}/tests/smoke.c"))
        .arg(format!("-I{manifest}/include"))
        .arg(format!("-L{}", profile_dir.display()))
        .arg("-lquiver_chow_ffi")
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).env("LD_LIBRARY_PATH", &profile_dir).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("dim=6 degree=57"));
}
