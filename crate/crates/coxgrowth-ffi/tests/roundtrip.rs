//! Exercise the C ABI from Rust: parse, compute, serialize, free.

use std::ffi::{CStr, CString};
use std::ptr;

use coxgrowth_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    cox_string_free(p);
    s
}

#[test]
fn parse_compute_roundtrip() {
    unsafe {
        let text = CString::new("vertices 4\nedge 1 2 6\nedge 2 3\nedge 3 4\n").unwrap();
        let mut diagram = ptr::null_mut();
        assert_eq!(cox_diagram_parse(text.as_ptr(), &mut diagram), CoxStatus::Ok);
        assert_eq!(cox_diagram_rank(diagram), 4);

        let mut rendered = ptr::null_mut();
        assert_eq!(cox_diagram_to_text(diagram, &mut rendered), CoxStatus::Ok);
        let rendered = take_string(rendered);
        assert!(rendered.contains("edge 1 2 6"));

        let mut verdict = ptr::null_mut();
        assert_eq!(cox_classify_json(diagram, &mut verdict), CoxStatus::Ok);
        let verdict: serde_json::Value = serde_json::from_str(&take_string(verdict)).unwrap();
        assert_eq!(verdict["type"], "quasi-lanner");
        assert_eq!(verdict["inf"], 1);

        let mut growth = ptr::null_mut();
        assert_eq!(cox_growth_compute(diagram, &mut growth), CoxStatus::Ok);

        let mut json = ptr::null_mut();
        assert_eq!(cox_growth_json(growth, &mut json), CoxStatus::Ok);
        let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(value["complete"]["num_factors"], "[2][4][6]");

        let mut prefix = ptr::null_mut();
        assert_eq!(cox_growth_series_prefix_json(growth, 4, &mut prefix), CoxStatus::Ok);
        let coeffs: Vec<String> = serde_json::from_str(&take_string(prefix)).unwrap();
        assert_eq!(coeffs, ["1", "4", "9", "16", "25"]);

        let mut verify = ptr::null_mut();
        assert_eq!(cox_verify_json(growth, &mut verify), CoxStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(verify)).unwrap();
        assert_eq!(report["pass"], true);

        let mut poles = ptr::null_mut();
        assert_eq!(cox_poles_json(growth, 1e-8, &mut poles), CoxStatus::Ok);
        let poles: serde_json::Value = serde_json::from_str(&take_string(poles)).unwrap();
        assert!(poles["growth_exponent"].as_f64().unwrap() > 1.0);

        cox_growth_free(growth);
        cox_diagram_free(diagram);
    }
}

#[test]
fn catalog_lookup_through_ffi() {
    unsafe {
        let label = CString::new("L5_1").unwrap();
        let mut diagram = ptr::null_mut();
        assert_eq!(cox_diagram_from_catalog(label.as_ptr(), &mut diagram), CoxStatus::Ok);
        assert_eq!(cox_diagram_rank(diagram), 5);
        cox_diagram_free(diagram);

        let missing = CString::new("L9_1").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(
            cox_diagram_from_catalog(missing.as_ptr(), &mut out),
            CoxStatus::UnknownLabel
        );
        let msg = CStr::from_ptr(cox_last_error_message()).to_str().unwrap();
        assert!(msg.contains("L9_1"));
    }
}

#[test]
fn error_paths() {
    unsafe {
        let bad = CString::new("vertices 2\nedge 1 2 1\n").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(cox_diagram_parse(bad.as_ptr(), &mut out), CoxStatus::ValidationError);

        let malformed = CString::new("nonsense").unwrap();
        assert_eq!(cox_diagram_parse(malformed.as_ptr(), &mut out), CoxStatus::ParseError);

        assert_eq!(cox_diagram_parse(ptr::null(), &mut out), CoxStatus::InvalidArgument);
        assert_eq!(cox_diagram_rank(ptr::null()), 0);
        // frees of null are no-ops
        cox_diagram_free(ptr::null_mut());
        cox_growth_free(ptr::null_mut());
        cox_string_free(ptr::null_mut());
    }
}
