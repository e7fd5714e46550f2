//! C ABI over `nok-core`.
//!
//! Every fallible call returns a [`NokStatus`] and writes its result through an
//! out-pointer. After a failure, `nok_last_error_message` describes it on the
//! calling thread. Handles and strings returned here are owned by the caller
//! and released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nok_core::bodies::{self, ClassifiedIdeal};
use nok_core::polyhedron::{self, RationalPolyhedron};
use nok_core::{invariants, parse, report, simis, Error};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NokStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input text; the message carries line and column.
    ParseError = 3,
    /// The ideal class or arguments are outside what the library supports.
    DomainError = 4,
    VertexLimit = 5,
    Panic = 6,
}

/// A parsed, classified monomial ideal.
pub struct NokIdeal {
    inner: ClassifiedIdeal,
}

/// An exact rational polyhedron.
pub struct NokPolyhedron {
    inner: RationalPolyhedron,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NokStatus {
    if e.is_parse_error() {
        NokStatus::ParseError
    } else if matches!(e, Error::TooManyVertices { .. }) {
        NokStatus::VertexLimit
    } else {
        NokStatus::DomainError
    }
}

struct Failure(NokStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null() -> Failure {
    Failure(NokStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, storing its value through `out` on success.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Failure>) -> NokStatus {
    if out.is_null() {
        set_error("null output pointer");
        return NokStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null above; the caller provides writable storage.
            unsafe { out.write(v) };
            set_error("");
            NokStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NokStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(NokStatus::InvalidUtf8, "input is not valid UTF-8".into()))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(NokStatus::Panic, "interior NUL in output".into()))
}

fn json_out(v: serde_json::Value) -> Result<*mut c_char, Failure> {
    into_c_string(v.to_string())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn nok_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Caps the number of vertices a double-description run may produce.
#[no_mangle]
pub extern "C" fn nok_set_max_vertices(limit: usize) {
    polyhedron::set_max_vertices(limit);
}

/// Parses ideal-file text (`vars:` plus `gens:` or `components:`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nok_ideal_parse(text: *const c_char, out: *mut *mut NokIdeal) -> NokStatus {
    guard(out, || {
        let file = parse::parse_ideal(read_str(text)?)?;
        Ok(Box::into_raw(Box::new(NokIdeal { inner: file.ideal })))
    })
}

/// # Safety
/// `ideal` must come from `nok_ideal_parse` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nok_ideal_free(ideal: *mut NokIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nok_ideal_nvars(ideal: *const NokIdeal, out: *mut usize) -> NokStatus {
    guard(out, || Ok(borrow(ideal)?.inner.nvars()))
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nok_newton_polyhedron(ideal: *const NokIdeal, out: *mut *mut NokPolyhedron) -> NokStatus {
    guard(out, || {
        let p = bodies::newton_polyhedron(borrow(ideal)?.inner.ideal())?;
        Ok(Box::into_raw(Box::new(NokPolyhedron { inner: p })))
    })
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nok_symbolic_polyhedron(ideal: *const NokIdeal, out: *mut *mut NokPolyhedron) -> NokStatus {
    guard(out, || {
        let p = bodies::symbolic_polyhedron(&borrow(ideal)?.inner)?;
        Ok(Box::into_raw(Box::new(NokPolyhedron { inner: p })))
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nok_polyhedron_free(p: *mut NokPolyhedron) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Maximal dimension of a compact face.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nok_polyhedron_mdc(p: *const NokPolyhedron, out: *mut usize) -> NokStatus {
    guard(out, || Ok(polyhedron::mdc(&borrow(p)?.inner)?))
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nok_polyhedron_vertex_count(p: *const NokPolyhedron, out: *mut usize) -> NokStatus {
    guard(out, || Ok(borrow(p)?.inner.vertices().len()))
}

/// Facets, vertices, rays and mdc as JSON; rationals are `"p/q"` strings.
///
/// # Safety
/// `p` must be a live handle and `out` writable. Free the string with `nok_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nok_polyhedron_to_json(p: *const NokPolyhedron, out: *mut *mut c_char) -> NokStatus {
    guard(out, || json_out(report::polyhedron(&borrow(p)?.inner)?))
}

/// Spreads, vertex denominators, `c`, `D` and the svd and sgt bounds as JSON.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable. Free the string with `nok_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nok_constants_json(ideal: *const NokIdeal, out: *mut *mut c_char) -> NokStatus {
    guard(out, || {
        json_out(report::invariants(&invariants::invariant_report(
            &borrow(ideal)?.inner,
        )?))
    })
}

/// Minimal generators of the `k`-th symbolic power as JSON.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable. Free the string with `nok_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nok_symbolic_power_json(ideal: *const NokIdeal, k: u32, out: *mut *mut c_char) -> NokStatus {
    guard(out, || {
        json_out(report::ideal(&bodies::symbolic_power(&borrow(ideal)?.inner, k)?))
    })
}

/// Hilbert basis of the Simis cone as JSON. A `degree_bound` of zero uses the
/// bound beyond which no basis element exists.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable. Free the string with `nok_string_free`.
#[no_mangle]
pub unsafe extern "C" fn nok_hilbert_json(
    ideal: *const NokIdeal,
    degree_bound: u32,
    out: *mut *mut c_char,
) -> NokStatus {
    guard(out, || {
        let bound = (degree_bound > 0).then_some(degree_bound);
        json_out(report::hilbert(&simis::hilbert_basis(&borrow(ideal)?.inner, bound)?))
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nok_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
