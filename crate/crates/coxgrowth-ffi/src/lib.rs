//! C ABI for the coxgrowth library.
//!
//! Conventions:
//! - Objects cross the boundary as opaque handles (`CoxDiagram`,
//!   `CoxGrowth`) created and freed by paired functions.
//! - Every fallible call returns a [`CoxStatus`]; results come back through
//!   out-pointers. On any non-OK status the thread-local message behind
//!   [`cox_last_error_message`] describes the failure.
//! - Structured results are NUL-terminated UTF-8 JSON strings allocated by
//!   the library; release them with [`cox_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coxgrowth::catalog;
use coxgrowth::classify::classify_verdict_json;
use coxgrowth::diagram::{parse_diagram, CoxeterMatrix};
use coxgrowth::growth::{steinberg_growth, GrowthResult};
use coxgrowth::poles::pole_report;
use coxgrowth::verify::full_report;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoxStatus {
    Ok = 0,
    /// A pointer argument was null or otherwise unusable.
    InvalidArgument = 1,
    /// The diagram text failed to parse.
    ParseError = 2,
    /// The diagram violates the Coxeter matrix invariants.
    ValidationError = 3,
    /// No catalog entry with the requested label.
    UnknownLabel = 4,
    /// Root finding or another numeric step failed.
    NumericError = 5,
    /// Argument text was not valid UTF-8.
    Utf8Error = 6,
    /// Unexpected internal failure.
    InternalError = 7,
}

/// Opaque handle: a validated Coxeter diagram.
pub struct CoxDiagram {
    matrix: CoxeterMatrix,
}

/// Opaque handle: a computed growth series.
pub struct CoxGrowth {
    matrix: CoxeterMatrix,
    growth: GrowthResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn status_of(err: &coxgrowth::Error) -> CoxStatus {
    use coxgrowth::Error::*;
    match err {
        Parse { .. } => CoxStatus::ParseError,
        Validation(_) | RankGuard { .. } => CoxStatus::ValidationError,
        UnknownLabel { .. } => CoxStatus::UnknownLabel,
        NonConvergence { .. } | HashCollision { .. } => CoxStatus::NumericError,
        _ => CoxStatus::InternalError,
    }
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cox_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, CoxStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(CoxStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CoxStatus::Utf8Error
    })
}

fn return_string(s: String, out: *mut *mut c_char) -> CoxStatus {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("result contained an interior NUL");
            return CoxStatus::InternalError;
        }
    };
    unsafe { *out = c.into_raw() };
    CoxStatus::Ok
}

fn guarded<F: FnOnce() -> CoxStatus>(f: F) -> CoxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            CoxStatus::InternalError
        }
    }
}

/// Parse a diagram in the line-oriented text format.
///
/// # Safety
/// `text` must point to a NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn cox_diagram_parse(
    text: *const c_char,
    out: *mut *mut CoxDiagram,
) -> CoxStatus {
    if out.is_null() {
        set_error("null out pointer");
        return CoxStatus::InvalidArgument;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| match parse_diagram(text) {
        Ok(matrix) => {
            *out = Box::into_raw(Box::new(CoxDiagram { matrix }));
            CoxStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

/// Load a bundled catalog diagram by label, e.g. "QL4_1".
///
/// # Safety
/// `label` must point to a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_diagram_from_catalog(
    label: *const c_char,
    out: *mut *mut CoxDiagram,
) -> CoxStatus {
    if out.is_null() {
        set_error("null out pointer");
        return CoxStatus::InvalidArgument;
    }
    let label = match read_str(label) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| match catalog::lookup(label) {
        Ok(entry) => {
            *out = Box::into_raw(Box::new(CoxDiagram { matrix: entry.matrix }));
            CoxStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

/// Number of generators of the diagram; 0 for a null handle.
///
/// # Safety
/// `diagram` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn cox_diagram_rank(diagram: *const CoxDiagram) -> u32 {
    if diagram.is_null() {
        return 0;
    }
    (*diagram).matrix.rank() as u32
}

/// Canonical text rendering of the diagram; free with cox_string_free.
///
/// # Safety
/// `diagram` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_diagram_to_text(
    diagram: *const CoxDiagram,
    out: *mut *mut c_char,
) -> CoxStatus {
    if diagram.is_null() || out.is_null() {
        set_error("null argument");
        return CoxStatus::InvalidArgument;
    }
    return_string((*diagram).matrix.to_text(), out)
}

/// Classification verdict as JSON:
/// `{"type", "components", "inf", "k", "branch"}`.
///
/// # Safety
/// `diagram` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_classify_json(
    diagram: *const CoxDiagram,
    out: *mut *mut c_char,
) -> CoxStatus {
    if diagram.is_null() || out.is_null() {
        set_error("null argument");
        return CoxStatus::InvalidArgument;
    }
    guarded(|| match classify_verdict_json(&(*diagram).matrix) {
        Ok(v) => return_string(v.to_string(), out),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

/// Compute the Poincare series of the diagram.
///
/// # Safety
/// `diagram` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_growth_compute(
    diagram: *const CoxDiagram,
    out: *mut *mut CoxGrowth,
) -> CoxStatus {
    if diagram.is_null() || out.is_null() {
        set_error("null argument");
        return CoxStatus::InvalidArgument;
    }
    guarded(|| match steinberg_growth(&(*diagram).matrix) {
        Ok(growth) => {
            *out = Box::into_raw(Box::new(CoxGrowth {
                matrix: (*diagram).matrix.clone(),
                growth,
            }));
            CoxStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

/// Full growth result as JSON (reduced, virgin, and complete forms with
/// coefficients as decimal strings).
///
/// # Safety
/// `growth` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_growth_json(
    growth: *const CoxGrowth,
    out: *mut *mut c_char,
) -> CoxStatus {
    if growth.is_null() || out.is_null() {
        set_error("null argument");
        return CoxStatus::InvalidArgument;
    }
    return_string((*growth).growth.to_json().to_string(), out)
}

/// First `len + 1` series coefficients as a JSON array of decimal strings.
///
/// # Safety
/// `growth` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_growth_series_prefix_json(
    growth: *const CoxGrowth,
    len: u32,
    out: *mut *mut c_char,
) -> CoxStatus {
    if growth.is_null() || out.is_null() {
        set_error("null argument");
        return CoxStatus::InvalidArgument;
    }
    guarded(|| match (*growth).growth.series_prefix(len as usize) {
        Ok(coeffs) => {
            let strings: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            return_string(serde_json::json!(strings).to_string(), out)
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

/// Verification report (structural checks) as JSON.
///
/// # Safety
/// `growth` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_verify_json(
    growth: *const CoxGrowth,
    out: *mut *mut c_char,
) -> CoxStatus {
    if growth.is_null() || out.is_null() {
        set_error("null argument");
        return CoxStatus::InvalidArgument;
    }
    let handle = &*growth;
    guarded(|| match full_report(&handle.matrix, &handle.growth, None) {
        Ok(r) => return_string(r.to_json().to_string(), out),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

/// Pole report (real poles, annulus bounds, growth exponent) as JSON.
///
/// # Safety
/// `growth` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cox_poles_json(
    growth: *const CoxGrowth,
    tol: f64,
    out: *mut *mut c_char,
) -> CoxStatus {
    if growth.is_null() || out.is_null() {
        set_error("null argument");
        return CoxStatus::InvalidArgument;
    }
    guarded(|| match pole_report(&(*growth).growth, tol) {
        Ok(r) => match serde_json::to_string(&r) {
            Ok(s) => return_string(s, out),
            Err(e) => {
                set_error(&e.to_string());
                CoxStatus::InternalError
            }
        },
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    })
}

/// Release a diagram handle. Null is a no-op.
///
/// # Safety
/// `diagram` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cox_diagram_free(diagram: *mut CoxDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// Release a growth handle. Null is a no-op.
///
/// # Safety
/// `growth` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cox_growth_free(growth: *mut CoxGrowth) {
    if !growth.is_null() {
        drop(Box::from_raw(growth));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be a string allocated by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cox_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
