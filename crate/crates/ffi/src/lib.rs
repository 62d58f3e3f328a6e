//! C ABI for the colorhodge library.
//!
//! Every function is panic-safe: panics are caught at the boundary and
//! surfaced as `CH_PANIC` instead of unwinding into the caller. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! must be released with [`ch_string_free`]; strings returned as
//! `const char *` are static and must not be freed.
//!
//! The generated header lives at `include/colorhodge.h` and is refreshed by
//! the build script.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use colorhodge::chromatic::sequence_chromatic_polynomial;
use colorhodge::cli::{hodge_csv, parse_input, theorem_csv};
use colorhodge::complex::build_chain_complex;
use colorhodge::error::Error;
use colorhodge::graphs::{is_diagonally_cycle_free, GraphSequence};
use colorhodge::hodge::hodge_table;
use colorhodge::verify::verify_theorem;
use colorhodge::Limits;

/// Result codes shared by every fallible function in this ABI.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum ChStatus {
    /// The call succeeded.
    CH_OK = 0,
    /// The input was malformed (bad JSON, bad vertex labels, empty graphs).
    CH_INPUT_ERROR = 2,
    /// The request exceeded a size guard.
    CH_BUDGET_EXCEEDED = 3,
    /// An internal cross-check failed; the result cannot be trusted.
    CH_INVARIANT_VIOLATION = 4,
    /// A required pointer argument was null.
    CH_NULL_POINTER = 5,
    /// A string argument was not valid UTF-8.
    CH_INVALID_UTF8 = 6,
    /// The library panicked; the call had no effect.
    CH_PANIC = 7,
}

/// An immutable graph sequence handle created by [`ch_sequence_from_json`].
pub struct ChSequence {
    inner: GraphSequence,
}

fn status_of(e: &Error) -> ChStatus {
    match e {
        Error::Input(_) => ChStatus::CH_INPUT_ERROR,
        Error::Budget(_) => ChStatus::CH_BUDGET_EXCEEDED,
        Error::Invariant(_) => ChStatus::CH_INVARIANT_VIOLATION,
    }
}

fn limits_with(max_n: usize) -> Limits {
    let mut limits = Limits::default();
    if max_n > 0 {
        limits.max_n = max_n;
    }
    limits
}

/// Reads a NUL-terminated argument string.
unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, ChStatus> {
    if p.is_null() {
        return Err(ChStatus::CH_NULL_POINTER);
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| ChStatus::CH_INVALID_UTF8)
}

/// Transfers an owned string to the caller through `out`.
unsafe fn give_string(out: *mut *mut c_char, s: String) -> ChStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            ChStatus::CH_OK
        }
        // Generated text never contains NUL bytes.
        Err(_) => ChStatus::CH_PANIC,
    }
}

fn guarded(body: impl FnOnce() -> ChStatus) -> ChStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(ChStatus::CH_PANIC)
}

/// Returns the library version as a static string. Never null; do not free.
#[no_mangle]
pub extern "C" fn ch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns a static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn ch_status_message(status: ChStatus) -> *const c_char {
    let msg: &'static str = match status {
        ChStatus::CH_OK => "ok\0",
        ChStatus::CH_INPUT_ERROR => "malformed input\0",
        ChStatus::CH_BUDGET_EXCEEDED => "size guard exceeded\0",
        ChStatus::CH_INVARIANT_VIOLATION => "internal invariant violated\0",
        ChStatus::CH_NULL_POINTER => "null pointer argument\0",
        ChStatus::CH_INVALID_UTF8 => "argument is not valid UTF-8\0",
        ChStatus::CH_PANIC => "library panic\0",
    };
    msg.as_ptr() as *const c_char
}

/// Parses a graph sequence from a JSON document of the form
/// `{"n": 4, "graphs": [[[1,2]], [[3,4]]]}` (1-based vertex labels).
/// On success `*out` owns the handle; release it with [`ch_sequence_free`].
///
/// # Safety
/// `json` must be NUL-terminated and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ch_sequence_from_json(
    json: *const c_char,
    out: *mut *mut ChSequence,
) -> ChStatus {
    guarded(|| {
        if out.is_null() {
            return ChStatus::CH_NULL_POINTER;
        }
        *out = ptr::null_mut();
        let text = match str_arg(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_input(text) {
            Ok(seq) => {
                *out = Box::into_raw(Box::new(ChSequence { inner: seq }));
                ChStatus::CH_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a handle created by [`ch_sequence_from_json`]. Null is a no-op.
///
/// # Safety
/// `seq` must be null or a pointer returned by [`ch_sequence_from_json`]
/// that has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn ch_sequence_free(seq: *mut ChSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Reports the number of vertices (`*out_n`) and member graphs (`*out_m`).
/// Either out-parameter may be null to skip it.
///
/// # Safety
/// `seq` must be a live handle from [`ch_sequence_from_json`].
#[no_mangle]
pub unsafe extern "C" fn ch_sequence_order(
    seq: *const ChSequence,
    out_n: *mut usize,
    out_m: *mut usize,
) -> ChStatus {
    guarded(|| {
        let Some(handle) = seq.as_ref() else {
            return ChStatus::CH_NULL_POINTER;
        };
        if !out_n.is_null() {
            *out_n = handle.inner.n();
        }
        if !out_m.is_null() {
            *out_m = handle.inner.len();
        }
        ChStatus::CH_OK
    })
}

/// Writes the sequence chromatic polynomial to `*out`, formatted in the
/// variable `L`, e.g. `L^4 - L^2`. Free the string with [`ch_string_free`].
///
/// # Safety
/// `seq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ch_chromatic_polynomial(
    seq: *const ChSequence,
    out: *mut *mut c_char,
) -> ChStatus {
    guarded(|| {
        if out.is_null() {
            return ChStatus::CH_NULL_POINTER;
        }
        *out = ptr::null_mut();
        let Some(handle) = seq.as_ref() else {
            return ChStatus::CH_NULL_POINTER;
        };
        let chi = sequence_chromatic_polynomial(&handle.inner);
        give_string(out, chi.format_with("L"))
    })
}

/// Writes the Hodge-piece dimension table as CSV with the columns
/// `kind,degree,piece,dimension`, where `kind` is `chain` or `homology`.
/// Pass `max_n = 0` to use the default guard. Free with [`ch_string_free`].
///
/// # Safety
/// `seq` must be a live handle and `out_csv` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ch_hodge_table_csv(
    seq: *const ChSequence,
    max_n: usize,
    out_csv: *mut *mut c_char,
) -> ChStatus {
    guarded(|| {
        if out_csv.is_null() {
            return ChStatus::CH_NULL_POINTER;
        }
        *out_csv = ptr::null_mut();
        let Some(handle) = seq.as_ref() else {
            return ChStatus::CH_NULL_POINTER;
        };
        let cc = match build_chain_complex(&handle.inner, limits_with(max_n).max_n) {
            Ok(cc) => cc,
            Err(e) => return status_of(&e),
        };
        match hodge_table(&cc, true) {
            Ok(table) => give_string(out_csv, hodge_csv(&table)),
            Err(e) => status_of(&e),
        }
    })
}

/// Checks the Euler-characteristic identity for the sequence through both
/// the chain-level and homology-level routes. `*out_all_match` reports the
/// verdict and `*out_csv` receives a row-per-piece CSV with the columns
/// `j,euler_chain,euler_homology,expected,match`. Pass `max_n = 0` for the
/// default guard. Free the CSV with [`ch_string_free`].
///
/// # Safety
/// `seq` must be a live handle; `out_all_match` and `out_csv` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ch_verify_theorem(
    seq: *const ChSequence,
    max_n: usize,
    out_all_match: *mut bool,
    out_csv: *mut *mut c_char,
) -> ChStatus {
    guarded(|| {
        if out_all_match.is_null() || out_csv.is_null() {
            return ChStatus::CH_NULL_POINTER;
        }
        *out_all_match = false;
        *out_csv = ptr::null_mut();
        let Some(handle) = seq.as_ref() else {
            return ChStatus::CH_NULL_POINTER;
        };
        match verify_theorem(&handle.inner, &limits_with(max_n), true) {
            Ok(rep) => {
                *out_all_match = rep.all_match;
                give_string(out_csv, theorem_csv(&rep))
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Decides whether the sequence is diagonally cycle-free. `*out_free`
/// receives the verdict; when the sequence fails, `*out_witness` receives a
/// human-readable counterexample (otherwise it is set to null). Free the
/// witness with [`ch_string_free`].
///
/// # Safety
/// `seq` must be a live handle; `out_free` and `out_witness` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ch_diagonally_cycle_free(
    seq: *const ChSequence,
    out_free: *mut bool,
    out_witness: *mut *mut c_char,
) -> ChStatus {
    guarded(|| {
        if out_free.is_null() || out_witness.is_null() {
            return ChStatus::CH_NULL_POINTER;
        }
        *out_free = false;
        *out_witness = ptr::null_mut();
        let Some(handle) = seq.as_ref() else {
            return ChStatus::CH_NULL_POINTER;
        };
        let verdict = is_diagonally_cycle_free(&handle.inner);
        *out_free = verdict.is_free();
        match verdict.witness() {
            Some(w) => give_string(out_witness, w),
            None => ChStatus::CH_OK,
        }
    })
}

/// Releases a string returned through a `char **` out-parameter. Null is a
/// no-op.
///
/// # Safety
/// `s` must be null or a string produced by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn ch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
