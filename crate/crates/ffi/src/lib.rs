//! C interface to the quiver-chow engine.
//!
//! A moduli space is held behind an opaque `QcModuli` handle. Every fallible
//! call returns a `QcStatus`; on failure `qc_last_error` gives a message for
//! the calling thread. Strings handed out by the library must be released
//! with `qc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quiver_chow::chow::{BuildOptions, Presentation};
use quiver_chow::invariants::{InvariantReport, ReportOptions};
use quiver_chow::quiver::{kronecker, QuiverSpec};
use quiver_chow::Error;

/// Result codes. The first four agree with the exit codes of the CLI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcStatus {
    Ok = 0,
    InvalidInput = 1,
    AssumptionViolated = 2,
    Structural = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Opaque handle to a built Chow ring presentation.
pub struct QcModuli {
    presentation: Presentation,
    report: Option<InvariantReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(e: Error) -> QcStatus {
    set_error(&e.to_string());
    match e {
        Error::Input(_) => QcStatus::InvalidInput,
        Error::Assumption(_) => QcStatus::AssumptionViolated,
        Error::Structural(_) => QcStatus::Structural,
    }
}

fn guard(f: impl FnOnce() -> QcStatus) -> QcStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            QcStatus::Panic
        }
    }
}

fn null() -> QcStatus {
    set_error("null pointer argument");
    QcStatus::NullPointer
}

unsafe fn emit_string(text: String, out: *mut *mut c_char) -> QcStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            QcStatus::Ok
        }
        Err(_) => fail(Error::structural("string contains a NUL byte")),
    }
}

fn build(result: quiver_chow::Result<Presentation>, out: *mut *mut QcModuli) -> QcStatus {
    match result {
        Ok(presentation) => {
            let handle = Box::new(QcModuli {
                presentation,
                report: None,
            });
            unsafe { *out = Box::into_raw(handle) };
            QcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Build `K_m(d,e)` with canonical stability.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn qc_moduli_new_kronecker(m: u32, d: u32, e: u32, out: *mut *mut QcModuli) -> QcStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        build(
            kronecker(m, d, e).and_then(|k| {
                Presentation::build(&k.quiver, &k.dims, &k.theta, None, &BuildOptions::default())
            }),
            out,
        )
    })
}

/// Build from a JSON spec `{"vertices", "arrows", "d", "theta"?}`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qc_moduli_new_from_json(spec: *const c_char, out: *mut *mut QcModuli) -> QcStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return null();
        }
        let text = match CStr::from_ptr(spec).to_str() {
            Ok(t) => t,
            Err(_) => return fail(Error::input("spec is not valid UTF-8")),
        };
        build(
            QuiverSpec::parse(text)
                .and_then(|s| s.resolve())
                .and_then(|(q, d, theta)| Presentation::build(&q, &d, &theta, None, &BuildOptions::default())),
            out,
        )
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `handle` must come from a `qc_moduli_new_*` call and not be used again.
#[no_mangle]
pub unsafe extern "C" fn qc_moduli_free(handle: *mut QcModuli) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Dimension of the moduli space.
///
/// # Safety
/// `handle` must be live and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qc_moduli_dimension(handle: *const QcModuli, out: *mut u32) -> QcStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return null();
        }
        *out = (*handle).presentation.dimension();
        QcStatus::Ok
    })
}

/// Ranks of the Chow groups in degrees `0..=dim`. Writes at most `capacity`
/// entries to `ranks` and the total count to `count`.
///
/// # Safety
/// `handle` must be live, `ranks` valid for `capacity` writes (or null when
/// `capacity` is 0) and `count` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qc_moduli_chow_ranks(
    handle: *const QcModuli,
    ranks: *mut usize,
    capacity: usize,
    count: *mut usize,
) -> QcStatus {
    guard(|| {
        if handle.is_null() || count.is_null() || (ranks.is_null() && capacity > 0) {
            return null();
        }
        let dims = (*handle).presentation.quotient_dims();
        for (k, &x) in dims.iter().take(capacity).enumerate() {
            *ranks.add(k) = x;
        }
        *count = dims.len();
        QcStatus::Ok
    })
}

unsafe fn with_report(
    handle: *mut QcModuli,
    out: *mut *mut c_char,
    f: impl FnOnce(&InvariantReport) -> String,
) -> QcStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return null();
        }
        let moduli = &mut *handle;
        if moduli.report.is_none() {
            match InvariantReport::compute(&moduli.presentation, &ReportOptions::default()) {
                Ok(r) => moduli.report = Some(r),
                Err(e) => return fail(e),
            }
        }
        emit_string(f(moduli.report.as_ref().unwrap()), out)
    })
}

/// Full invariant report as a JSON object. Computed once per handle.
///
/// # Safety
/// `handle` must be live and `out` valid for one write; release the string
/// with `qc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn qc_moduli_report_json(handle: *mut QcModuli, out: *mut *mut c_char) -> QcStatus {
    with_report(handle, out, |r| r.to_json().to_string())
}

/// Degree of the ample generator, as a decimal string.
///
/// # Safety
/// As for `qc_moduli_report_json`.
#[no_mangle]
pub unsafe extern "C" fn qc_moduli_degree(handle: *mut QcModuli, out: *mut *mut c_char) -> QcStatus {
    with_report(handle, out, |r| r.degree.to_string())
}

/// Message of the last failure on this thread, or null. Owned by the
/// library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn qc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn qc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn qc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
