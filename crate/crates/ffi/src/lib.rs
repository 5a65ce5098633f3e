//! C interface to `fskein`.
//!
//! Every call returns an `int32_t` status (`FSK_OK` or a negative error code) and writes
//! results through out-pointers. Handles are opaque and freed by their `_free` function.
//! Strings handed out are owned by the caller and released with `fsk_string_free`. The
//! message of the last failure on the calling thread is available from `fsk_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use fskein::abelian::abelianization_tv_with_base;
use fskein::actions::QSpace;
use fskein::cli::{element, preset};
use fskein::fraction::GroupElement;
use fskein::germ::End;
use fskein::rewriting::{Engine, Verdict};
use fskein::skein_dsl::parse_presentation;
use fskein::Error;

pub const FSK_OK: i32 = 0;
pub const FSK_ERR_NULL: i32 = -1;
pub const FSK_ERR_UTF8: i32 = -2;
pub const FSK_ERR_PARSE: i32 = -3;
pub const FSK_ERR_DOMAIN: i32 = -4;
pub const FSK_ERR_PANIC: i32 = -5;

pub const FSK_VERDICT_EQUAL: i32 = 0;
pub const FSK_VERDICT_DISTINCT: i32 = 1;
pub const FSK_VERDICT_UNKNOWN: i32 = 2;

pub const FSK_END_O: i32 = 0;
pub const FSK_END_OMEGA: i32 = 1;

/// A presentation with its word-problem engine.
pub struct FskEngine {
    inner: Arc<Engine>,
}

/// An element of the fraction group of an engine.
pub struct FskElement {
    inner: GroupElement,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownColour(_) => FSK_ERR_PARSE,
        _ => FSK_ERR_DOMAIN,
    }
}

/// Run `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (i32, String)>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FSK_OK,
        Ok(Err((code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            FSK_ERR_PANIC
        }
    }
}

fn lib<T>(r: fskein::Result<T>) -> Result<T, (i32, String)> {
    r.map_err(|e| (code_of(&e), e.to_string()))
}

unsafe fn input<'a>(s: *const c_char) -> Result<&'a str, (i32, String)> {
    if s.is_null() {
        return Err((FSK_ERR_NULL, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (FSK_ERR_UTF8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, (i32, String)> {
    h.as_ref().ok_or((FSK_ERR_NULL, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), (i32, String)> {
    if out.is_null() {
        return Err((FSK_ERR_NULL, "null out-pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message of the last failed call on this thread; valid until the next failure.
#[no_mangle]
pub extern "C" fn fsk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fsk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Engine for a preset such as `cleary:2` or `higman:4`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_engine_from_preset(name: *const c_char, out: *mut *mut FskEngine) -> i32 {
    guard(|| {
        let p = lib(preset(input(name)?))?;
        let e = Box::new(FskEngine { inner: Arc::new(Engine::auto(p)) });
        put(out, Box::into_raw(e))
    })
}

/// Engine for a presentation in the text format (`colors:` and `rel:` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_engine_from_text(text: *const c_char, out: *mut *mut FskEngine) -> i32 {
    guard(|| {
        let p = lib(parse_presentation(input(text)?))?;
        let e = Box::new(FskEngine { inner: Arc::new(Engine::auto(p)) });
        put(out, Box::into_raw(e))
    })
}

/// # Safety
/// `e` must be null or a live engine handle.
#[no_mangle]
pub unsafe extern "C" fn fsk_engine_free(e: *mut FskEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Strategy name and budget, as `engine=… budget=… base=…`.
///
/// # Safety
/// `e` must be a live engine handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_engine_describe(e: *const FskEngine, out: *mut *mut c_char) -> i32 {
    guard(|| put(out, owned(handle(e)?.inner.describe())))
}

/// Invariant factors of the abelianization of the T- and V-type groups, e.g. `Z^2 x Z/3`.
///
/// # Safety
/// `e` must be a live engine handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_engine_abelianization(e: *const FskEngine, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let eng = &handle(e)?.inner;
        let a = lib(abelianization_tv_with_base(eng.presentation(), eng.base()))?;
        put(out, owned(a.to_string()))
    })
}

/// Germ group presentation at `FSK_END_O` or `FSK_END_OMEGA`.
///
/// # Safety
/// `e` must be a live engine handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_engine_germ(e: *const FskEngine, end: i32, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let end = match end {
            FSK_END_O => End::O,
            FSK_END_OMEGA => End::Omega,
            _ => return Err((FSK_ERR_DOMAIN, format!("bad end {end}"))),
        };
        let g = QSpace::new(handle(e)?.inner.clone()).germ(end);
        put(out, owned(g.to_string()))
    })
}

/// Parse `frac(t ; π ; s)` or a generator word such as `[b1, hat.a2]`.
///
/// # Safety
/// `e` must be a live engine handle, `text` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_element_parse(
    e: *const FskEngine,
    text: *const c_char,
    out: *mut *mut FskElement,
) -> i32 {
    guard(|| {
        let g = lib(element(input(text)?, &handle(e)?.inner, 0))?;
        put(out, Box::into_raw(Box::new(FskElement { inner: g })))
    })
}

/// # Safety
/// `g` must be null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn fsk_element_free(g: *mut FskElement) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `a · b`; both must come from the same engine.
///
/// # Safety
/// `a` and `b` must be live element handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_element_multiply(
    a: *const FskElement,
    b: *const FskElement,
    out: *mut *mut FskElement,
) -> i32 {
    guard(|| {
        let (a, b) = (&handle(a)?.inner, &handle(b)?.inner);
        if !Arc::ptr_eq(a.engine(), b.engine()) {
            return Err((FSK_ERR_DOMAIN, "elements belong to different engines".into()));
        }
        let g = lib(a.multiply(b))?;
        put(out, Box::into_raw(Box::new(FskElement { inner: g })))
    })
}

/// # Safety
/// `a` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_element_inverse(a: *const FskElement, out: *mut *mut FskElement) -> i32 {
    guard(|| {
        let g = handle(a)?.inner.inverse();
        put(out, Box::into_raw(Box::new(FskElement { inner: g })))
    })
}

/// Writes one of the `FSK_VERDICT_*` values.
///
/// # Safety
/// `a` must be a live element handle and `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_element_is_identity(a: *const FskElement, verdict: *mut i32) -> i32 {
    guard(|| {
        let v = match handle(a)?.inner.is_identity() {
            Verdict::Equal(_) => FSK_VERDICT_EQUAL,
            Verdict::Distinct(_) => FSK_VERDICT_DISTINCT,
            Verdict::Unknown(_) => FSK_VERDICT_UNKNOWN,
        };
        put(verdict, v)
    })
}

/// The reduced `frac(t ; π ; s)` form.
///
/// # Safety
/// `a` must be a live element handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsk_element_to_string(a: *const FskElement, out: *mut *mut c_char) -> i32 {
    guard(|| put(out, owned(handle(a)?.inner.to_string())))
}

