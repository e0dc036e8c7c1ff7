//! Exercises the C interface through its exported functions: handle
//! lifecycle, class queries, report runs, error codes, and the generated
//! header.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sdhall_ffi::{
    sdhall_class_ids_free, sdhall_engine_class_describe, sdhall_engine_class_list,
    sdhall_engine_free, sdhall_engine_hall_number, sdhall_engine_new, sdhall_engine_vertex_count,
    sdhall_last_error_message, sdhall_run_report, sdhall_string_free, SdhallEngine, SdhallStatus,
};

const JORDAN: &str = "vertices: 0\narrow: 0 0\n";

fn last_error() -> String {
    let ptr = sdhall_last_error_message();
    assert!(!ptr.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

fn new_engine(text: &str, q: u8, nilpotent: bool, budget: u64) -> *mut SdhallEngine {
    let text = CString::new(text).unwrap();
    let mut handle: *mut SdhallEngine = ptr::null_mut();
    let code = unsafe { sdhall_engine_new(text.as_ptr(), q, nilpotent, budget, &mut handle) };
    assert_eq!(code, SdhallStatus::Ok, "{}", last_error());
    assert!(!handle.is_null());
    handle
}

fn class_list(engine: *const SdhallEngine, dims: &[usize]) -> Vec<u64> {
    let mut ids: *mut u64 = ptr::null_mut();
    let mut len: usize = 0;
    let code =
        unsafe { sdhall_engine_class_list(engine, dims.as_ptr(), dims.len(), &mut ids, &mut len) };
    assert_eq!(code, SdhallStatus::Ok, "{}", last_error());
    let out = unsafe { std::slice::from_raw_parts(ids, len) }.to_vec();
    unsafe { sdhall_class_ids_free(ids, len) };
    out
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { sdhall_string_free(ptr) };
    text
}

#[test]
fn engine_lifecycle_and_class_queries() {
    let engine = new_engine(JORDAN, 2, true, 1 << 22);

    let mut n: usize = 0;
    let code = unsafe { sdhall_engine_vertex_count(engine, &mut n) };
    assert_eq!(code, SdhallStatus::Ok);
    assert_eq!(n, 1);

    let dim1 = class_list(engine, &[1]);
    assert_eq!(dim1.len(), 1, "one class of total dimension one");
    let dim2 = class_list(engine, &[2]);
    assert_eq!(
        dim2.len(),
        2,
        "two nilpotent classes of total dimension two"
    );

    let mut descr: *mut c_char = ptr::null_mut();
    let code = unsafe { sdhall_engine_class_describe(engine, dim1[0], &mut descr) };
    assert_eq!(code, SdhallStatus::Ok);
    let text = take_string(descr);
    assert!(text.contains("d[1]"), "description was `{text}`");

    // the simple class extends itself in two ways: the split square
    // (three invariant lines) and the regular indecomposable (one)
    let s = dim1[0];
    let mut counts: Vec<u64> = dim2
        .iter()
        .map(|&z| {
            let mut out = 0u64;
            let code = unsafe { sdhall_engine_hall_number(engine, s, s, z, &mut out) };
            assert_eq!(code, SdhallStatus::Ok, "{}", last_error());
            out
        })
        .collect();
    counts.sort_unstable();
    assert_eq!(counts, vec![1, 3]);

    unsafe { sdhall_engine_free(engine) };
}

#[test]
fn class_ids_are_validated() {
    let engine = new_engine(JORDAN, 2, true, 1 << 22);
    let mut descr: *mut c_char = ptr::null_mut();
    let code = unsafe { sdhall_engine_class_describe(engine, 999, &mut descr) };
    assert_eq!(code, SdhallStatus::InvalidArgument);
    assert!(last_error().contains("999"));
    unsafe { sdhall_engine_free(engine) };
}

#[test]
fn null_arguments_are_rejected() {
    let text = CString::new(JORDAN).unwrap();
    let code = unsafe { sdhall_engine_new(text.as_ptr(), 2, true, 1 << 22, ptr::null_mut()) };
    assert_eq!(code, SdhallStatus::NullArgument);

    let mut handle: *mut SdhallEngine = ptr::null_mut();
    let code = unsafe { sdhall_engine_new(ptr::null(), 2, true, 1 << 22, &mut handle) };
    assert_eq!(code, SdhallStatus::NullArgument);

    let mut n: usize = 0;
    let code = unsafe { sdhall_engine_vertex_count(ptr::null(), &mut n) };
    assert_eq!(code, SdhallStatus::NullArgument);

    // freeing null handles and strings is a documented no-op
    unsafe { sdhall_engine_free(ptr::null_mut()) };
    unsafe { sdhall_string_free(ptr::null_mut()) };
    unsafe { sdhall_class_ids_free(ptr::null_mut(), 0) };
}

#[test]
fn bad_field_size_is_a_config_error() {
    let text = CString::new(JORDAN).unwrap();
    let mut handle: *mut SdhallEngine = ptr::null_mut();
    let code = unsafe { sdhall_engine_new(text.as_ptr(), 4, true, 1 << 22, &mut handle) };
    assert_eq!(code, SdhallStatus::ConfigError);
    assert!(last_error().contains("field size"));
}

#[test]
fn parse_errors_carry_the_line_number() {
    let text = CString::new("vertices: 0\nfrob: 1\n").unwrap();
    let mut handle: *mut SdhallEngine = ptr::null_mut();
    let code = unsafe { sdhall_engine_new(text.as_ptr(), 2, true, 1 << 22, &mut handle) };
    assert_eq!(code, SdhallStatus::ParseError);
    assert!(last_error().contains("line 2"));
}

#[test]
fn tight_budgets_surface_as_budget_errors() {
    let engine = new_engine(JORDAN, 2, true, 4);
    let dims = [3usize];
    let mut ids: *mut u64 = ptr::null_mut();
    let mut len: usize = 0;
    let code =
        unsafe { sdhall_engine_class_list(engine, dims.as_ptr(), dims.len(), &mut ids, &mut len) };
    assert_eq!(code, SdhallStatus::BudgetExceeded);
    unsafe { sdhall_engine_free(engine) };
}

#[allow(clippy::too_many_arguments)]
fn run_report(
    command: &str,
    quiver: &str,
    qs: &[u8],
    lmax: usize,
    mode: &str,
    charge: Option<&str>,
    lambda: Option<&str>,
    budget: u64,
    dim_bound: usize,
) -> (SdhallStatus, Option<String>) {
    let command = CString::new(command).unwrap();
    let quiver = CString::new(quiver).unwrap();
    let mode = CString::new(mode).unwrap();
    let charge = charge.map(|c| CString::new(c).unwrap());
    let lambda = lambda.map(|l| CString::new(l).unwrap());
    let mut report: *mut c_char = ptr::null_mut();
    let code = unsafe {
        sdhall_run_report(
            command.as_ptr(),
            quiver.as_ptr(),
            qs.as_ptr(),
            qs.len(),
            lmax,
            mode.as_ptr(),
            charge.as_ref().map_or(ptr::null(), |c| c.as_ptr()),
            lambda.as_ref().map_or(ptr::null(), |l| l.as_ptr()),
            budget,
            dim_bound,
            true,
            &mut report,
        )
    };
    let text = (!report.is_null()).then(|| take_string(report));
    (code, text)
}

#[test]
fn verify_report_passes_for_the_layered_presentation() {
    let (code, text) = run_report("verify", JORDAN, &[2], 2, "layered", None, None, 1 << 22, 3);
    assert_eq!(code, SdhallStatus::Ok);
    let text = text.unwrap();
    assert!(text.starts_with("sdhall-report-v1\n"));
    assert!(text.contains("verdict = pass"));
}

#[test]
fn verify_report_passes_for_the_charged_presentation() {
    let (code, text) = run_report(
        "verify",
        JORDAN,
        &[3],
        2,
        "charged",
        Some("0=2"),
        Some("lambda: 0 0\nlambda: 0 1\n"),
        1 << 22,
        3,
    );
    assert_eq!(code, SdhallStatus::Ok, "{}", last_error());
    assert!(text.unwrap().contains("verdict = pass"));
}

#[test]
fn failed_checks_still_render_a_report() {
    let (code, text) = run_report(
        "hallnum",
        JORDAN,
        &[2],
        2,
        "layered",
        None,
        None,
        4, // far too small for the dimension-two tables
        2,
    );
    assert_eq!(code, SdhallStatus::VerificationFailed);
    let text = text.unwrap();
    assert!(text.contains("status=error"));
    assert!(text.contains("verdict = fail"));
}

#[test]
fn unknown_commands_are_invalid_arguments() {
    let (code, text) = run_report(
        "frobnicate",
        JORDAN,
        &[2],
        2,
        "layered",
        None,
        None,
        1 << 22,
        2,
    );
    assert_eq!(code, SdhallStatus::InvalidArgument);
    assert!(text.is_none());
    assert!(last_error().contains("unknown command"));
}

#[test]
fn generated_header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sdhall.h"))
        .expect("the build script generates include/sdhall.h");
    for symbol in [
        "typedef enum SdhallStatus",
        "typedef struct SdhallEngine SdhallEngine;",
        "sdhall_last_error_message",
        "sdhall_engine_new",
        "sdhall_engine_free",
        "sdhall_engine_class_list",
        "sdhall_class_ids_free",
        "sdhall_engine_class_describe",
        "sdhall_engine_hall_number",
        "sdhall_string_free",
        "sdhall_run_report",
    ] {
        assert!(header.contains(symbol), "header lacks `{symbol}`");
    }
}
