//! C interface to the sdhall engine.
//!
//! Every function is panic-safe: panics are caught at the boundary and
//! reported as [`SdhallStatus::Panic`].  Functions that can fail return an
//! [`SdhallStatus`] and leave a human-readable message retrievable with
//! [`sdhall_last_error_message`] on the same thread.  Every allocation
//! handed to the caller has a dedicated paired free function; nothing may
//! be released with the C library's `free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;

use sdhall::config::{parse_charge_list, parse_lambda_text, parse_quiver_text, Mode, RunConfig};
use sdhall::driver;
use sdhall::error::Error;
use sdhall::rep::{Budget, ClassId, RepContext};

/// Result code returned by every fallible interface function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdhallStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument was outside its documented range (unknown command,
    /// unknown mode, class id not previously returned by this engine, ...).
    InvalidArgument = 3,
    /// Quiver or scalar-table text failed to parse.
    ParseError = 4,
    /// The requested run was inconsistent (bad field size, charge row
    /// mismatch, ...).
    ConfigError = 5,
    /// An enumeration would exceed the configured budget ceiling.
    BudgetExceeded = 6,
    /// An internal arithmetic invariant failed.
    ArithmeticError = 7,
    /// Operands from incompatible contexts were combined.
    IncompatibleOperands = 8,
    /// An input/output error occurred.
    IoError = 9,
    /// The run completed and produced a report, but at least one check did
    /// not come out zero.  The report is still written to the out-pointer.
    VerificationFailed = 10,
    /// A panic was caught at the interface boundary.
    Panic = 11,
}

/// Opaque handle to a classification context over one quiver and one
/// finite field.  Create with [`sdhall_engine_new`], release with
/// [`sdhall_engine_free`].
pub struct SdhallEngine {
    reps: Arc<RepContext>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SdhallStatus {
    match err {
        Error::Parse { .. } => SdhallStatus::ParseError,
        Error::Config(_) => SdhallStatus::ConfigError,
        Error::Budget { .. } => SdhallStatus::BudgetExceeded,
        Error::Arithmetic(_) => SdhallStatus::ArithmeticError,
        Error::Incompatible(_) => SdhallStatus::IncompatibleOperands,
        Error::Io(_) => SdhallStatus::IoError,
    }
}

fn fail(err: Error) -> SdhallStatus {
    let code = status_of(&err);
    set_last_error(err.to_string());
    code
}

fn fail_with(code: SdhallStatus, msg: impl Into<String>) -> SdhallStatus {
    set_last_error(msg.into());
    code
}

fn guarded(f: impl FnOnce() -> SdhallStatus) -> SdhallStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            set_last_error(format!("caught panic: {msg}"));
            SdhallStatus::Panic
        }
    }
}

/// Read a required UTF-8 C string argument.
unsafe fn required_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, SdhallStatus> {
    if ptr.is_null() {
        return Err(fail_with(
            SdhallStatus::NullArgument,
            format!("{what} must not be null"),
        ));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        fail_with(
            SdhallStatus::InvalidUtf8,
            format!("{what} must be valid UTF-8"),
        )
    })
}

fn give_string(text: String, out: *mut *mut c_char) -> SdhallStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            return fail_with(
                SdhallStatus::ArithmeticError,
                "rendered text contained an interior NUL byte",
            )
        }
    };
    unsafe { *out = c.into_raw() };
    SdhallStatus::Ok
}

/// Message describing the most recent failure on the calling thread, or
/// null if no call on this thread has failed yet.  The pointer stays valid
/// until the next failing interface call on the same thread; do not free
/// it.
#[no_mangle]
pub extern "C" fn sdhall_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Build an engine from quiver-file text (`vertices:` / `arrow:` lines,
/// `#` comments).
///
/// `q` must be one of 2, 3, 5, 7.  When `nilpotent_only` is true the
/// engine classifies only nilpotent representations.  `budget` caps every
/// enumeration the engine runs.  On success writes a handle to `out`;
/// release it with [`sdhall_engine_free`].
///
/// # Safety
///
/// `quiver_text` must be a NUL-terminated string and `out` must point to
/// writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sdhall_engine_new(
    quiver_text: *const c_char,
    q: u8,
    nilpotent_only: bool,
    budget: u64,
    out: *mut *mut SdhallEngine,
) -> SdhallStatus {
    guarded(|| {
        if out.is_null() {
            return fail_with(SdhallStatus::NullArgument, "out must not be null");
        }
        let text = match required_str(quiver_text, "quiver_text") {
            Ok(t) => t,
            Err(code) => return code,
        };
        if ![2u8, 3, 5, 7].contains(&q) {
            return fail_with(
                SdhallStatus::ConfigError,
                format!("field size must be one of 2, 3, 5, 7, got {q}"),
            );
        }
        let parsed = match parse_quiver_text(text) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let quiver = match parsed.build() {
            Ok(qv) => Arc::new(qv),
            Err(e) => return fail(e),
        };
        let reps = RepContext::new(
            quiver,
            q,
            nilpotent_only,
            Budget::with_ceiling(budget as u128),
        );
        *out = Box::into_raw(Box::new(SdhallEngine { reps }));
        SdhallStatus::Ok
    })
}

/// Release an engine returned by [`sdhall_engine_new`].  Passing null is
/// a no-op.
///
/// # Safety
///
/// `engine` must be null or a handle from [`sdhall_engine_new`] that has
/// not already been freed; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sdhall_engine_free(engine: *mut SdhallEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

unsafe fn engine_ref<'a>(engine: *const SdhallEngine) -> Result<&'a SdhallEngine, SdhallStatus> {
    if engine.is_null() {
        return Err(fail_with(
            SdhallStatus::NullArgument,
            "engine must not be null",
        ));
    }
    Ok(&*engine)
}

/// Number of quiver vertices the engine was built over.
///
/// # Safety
///
/// `engine` must be a live handle and `out` must point to writable memory
/// for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn sdhall_engine_vertex_count(
    engine: *const SdhallEngine,
    out: *mut usize,
) -> SdhallStatus {
    guarded(|| {
        let eng = match engine_ref(engine) {
            Ok(e) => e,
            Err(code) => return code,
        };
        if out.is_null() {
            return fail_with(SdhallStatus::NullArgument, "out must not be null");
        }
        *out = eng.reps.quiver().n();
        SdhallStatus::Ok
    })
}

/// List the isomorphism classes with the given dimension vector.
///
/// `dims` must have one entry per quiver vertex.  On success writes a
/// heap-allocated id array to `ids_out` and its length to `len_out`;
/// release the array with [`sdhall_class_ids_free`].  The ids are stable
/// for the lifetime of the engine and are accepted by the other
/// class-query functions.
///
/// # Safety
///
/// `engine` must be a live handle, `dims` must point to `dims_len`
/// readable entries, and `ids_out` / `len_out` must point to writable
/// memory.
#[no_mangle]
pub unsafe extern "C" fn sdhall_engine_class_list(
    engine: *const SdhallEngine,
    dims: *const usize,
    dims_len: usize,
    ids_out: *mut *mut u64,
    len_out: *mut usize,
) -> SdhallStatus {
    guarded(|| {
        let eng = match engine_ref(engine) {
            Ok(e) => e,
            Err(code) => return code,
        };
        if dims.is_null() || ids_out.is_null() || len_out.is_null() {
            return fail_with(
                SdhallStatus::NullArgument,
                "dims, ids_out and len_out must not be null",
            );
        }
        let dims = std::slice::from_raw_parts(dims, dims_len);
        if dims.len() != eng.reps.quiver().n() {
            return fail_with(
                SdhallStatus::InvalidArgument,
                format!(
                    "dimension vector has {} entries but the quiver has {} vertices",
                    dims.len(),
                    eng.reps.quiver().n()
                ),
            );
        }
        let classes = match eng.reps.enumerate_reps(dims) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let ids: Vec<u64> = classes.iter().map(|&(c, _)| c.0 as u64).collect();
        let mut boxed = ids.into_boxed_slice();
        *len_out = boxed.len();
        *ids_out = boxed.as_mut_ptr();
        std::mem::forget(boxed);
        SdhallStatus::Ok
    })
}

/// Release an id array returned by [`sdhall_engine_class_list`].  Passing
/// a null array is a no-op.
///
/// # Safety
///
/// `ids` and `len` must be exactly the pair produced by one successful
/// [`sdhall_engine_class_list`] call, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn sdhall_class_ids_free(ids: *mut u64, len: usize) {
    if !ids.is_null() {
        drop(Box::from_raw(std::ptr::slice_from_raw_parts_mut(ids, len)));
    }
}

unsafe fn known_class(eng: &SdhallEngine, id: u64, what: &str) -> Result<ClassId, SdhallStatus> {
    let idx = id as usize;
    if idx >= eng.reps.class_count() {
        return Err(fail_with(
            SdhallStatus::InvalidArgument,
            format!("{what} {id} was never returned by this engine"),
        ));
    }
    Ok(ClassId(idx))
}

/// Render a short human-readable description of a class (dimension vector
/// and structural fingerprint).  Release the string with
/// [`sdhall_string_free`].
///
/// # Safety
///
/// `engine` must be a live handle, `class_id` must come from
/// [`sdhall_engine_class_list`] on the same engine, and `out` must point
/// to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sdhall_engine_class_describe(
    engine: *const SdhallEngine,
    class_id: u64,
    out: *mut *mut c_char,
) -> SdhallStatus {
    guarded(|| {
        let eng = match engine_ref(engine) {
            Ok(e) => e,
            Err(code) => return code,
        };
        if out.is_null() {
            return fail_with(SdhallStatus::NullArgument, "out must not be null");
        }
        let id = match known_class(eng, class_id, "class id") {
            Ok(c) => c,
            Err(code) => return code,
        };
        give_string(eng.reps.describe(id), out)
    })
}

/// Count the subobjects of the `middle` class that are isomorphic to the
/// `sub` class with quotient isomorphic to the `quotient` class (a Hall
/// number).
///
/// # Safety
///
/// `engine` must be a live handle, all three ids must come from
/// [`sdhall_engine_class_list`] on the same engine, and `out` must point
/// to writable memory for one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn sdhall_engine_hall_number(
    engine: *const SdhallEngine,
    quotient: u64,
    sub: u64,
    middle: u64,
    out: *mut u64,
) -> SdhallStatus {
    guarded(|| {
        let eng = match engine_ref(engine) {
            Ok(e) => e,
            Err(code) => return code,
        };
        if out.is_null() {
            return fail_with(SdhallStatus::NullArgument, "out must not be null");
        }
        let x = match known_class(eng, quotient, "quotient class id") {
            Ok(c) => c,
            Err(code) => return code,
        };
        let y = match known_class(eng, sub, "sub class id") {
            Ok(c) => c,
            Err(code) => return code,
        };
        let z = match known_class(eng, middle, "middle class id") {
            Ok(c) => c,
            Err(code) => return code,
        };
        match eng.reps.hall_number(x, y, z) {
            Ok(n) => {
                *out = n;
                SdhallStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Release a string returned by this library.  Passing null is a no-op.
///
/// # Safety
///
/// `s` must be null or a string produced by this library, freed at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn sdhall_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Run one of the report-producing commands and hand back the rendered
/// report text.
///
/// `command` is one of `"cartan"`, `"hallnum"`, `"verify"`,
/// `"identities"`; `mode` is `"layered"` or `"charged"`; `qs` lists the
/// field sizes to run at.  `charge` (e.g. `"0=2,1=1"`) and `lambda_text`
/// (scalar-table rows in the same format as a table file) may be null
/// when the mode does not need them.  On success — and on
/// `VerificationFailed`, which still renders a full report — writes the
/// report to `report_out`; release it with [`sdhall_string_free`].
/// Returns `Ok` only when every check in the report came out zero.
///
/// # Safety
///
/// All pointer arguments must be null or valid: strings NUL-terminated,
/// `qs` pointing to `qs_len` readable bytes, `report_out` pointing to
/// writable memory for one pointer.  `command`, `quiver_text`, `mode`,
/// `qs` and `report_out` must not be null.
#[no_mangle]
pub unsafe extern "C" fn sdhall_run_report(
    command: *const c_char,
    quiver_text: *const c_char,
    qs: *const u8,
    qs_len: usize,
    lmax: usize,
    mode: *const c_char,
    charge: *const c_char,
    lambda_text: *const c_char,
    budget: u64,
    dim_bound: usize,
    serial: bool,
    report_out: *mut *mut c_char,
) -> SdhallStatus {
    guarded(|| {
        if report_out.is_null() || qs.is_null() {
            return fail_with(
                SdhallStatus::NullArgument,
                "qs and report_out must not be null",
            );
        }
        let command = match required_str(command, "command") {
            Ok(t) => t,
            Err(code) => return code,
        };
        let text = match required_str(quiver_text, "quiver_text") {
            Ok(t) => t,
            Err(code) => return code,
        };
        let mode_text = match required_str(mode, "mode") {
            Ok(t) => t,
            Err(code) => return code,
        };
        let mode: Mode = match mode_text.parse() {
            Ok(m) => m,
            Err(e) => return fail(e),
        };
        let parsed = match parse_quiver_text(text) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let quiver = match parsed.build() {
            Ok(qv) => Arc::new(qv),
            Err(e) => return fail(e),
        };
        let mut lambda_rows = parsed.lambda.clone();
        if !lambda_text.is_null() {
            let table = match required_str(lambda_text, "lambda_text") {
                Ok(t) => t,
                Err(code) => return code,
            };
            match parse_lambda_text(table) {
                Ok(mut rows) => lambda_rows.append(&mut rows),
                Err(e) => return fail(e),
            }
        }
        let charge_entries = if charge.is_null() {
            Vec::new()
        } else {
            let entries = match required_str(charge, "charge") {
                Ok(t) => t,
                Err(code) => return code,
            };
            match parse_charge_list(entries) {
                Ok(c) => c,
                Err(e) => return fail(e),
            }
        };
        let cfg = RunConfig {
            quiver_path: PathBuf::from("<memory>"),
            parsed,
            quiver,
            qs: std::slice::from_raw_parts(qs, qs_len).to_vec(),
            lmax,
            mode,
            charge_entries,
            lambda_rows,
            budget: budget as u128,
            dim_bound,
            out: None,
            serial,
        };
        if let Err(e) = cfg.validate() {
            return fail(e);
        }
        let report = match command {
            "cartan" => driver::run_cartan(&cfg),
            "hallnum" => driver::run_hallnum(&cfg),
            "verify" => driver::run_verify(&cfg),
            "identities" => driver::run_identities(&cfg),
            other => {
                return fail_with(
                    SdhallStatus::InvalidArgument,
                    format!(
                        "unknown command `{other}` (expected cartan, hallnum, verify \
                         or identities)"
                    ),
                )
            }
        };
        let report = match report {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let all_zero = report.all_zero();
        let code = give_string(report.render(), report_out);
        if !matches!(code, SdhallStatus::Ok) {
            return code;
        }
        if all_zero {
            SdhallStatus::Ok
        } else {
            fail_with(
                SdhallStatus::VerificationFailed,
                "at least one check did not come out zero; see the report",
            )
        }
    })
}
