//! C ABI for `blockglue`.
//!
//! Specs live behind an opaque `BgSpec` handle from `bg_spec_parse`, freed
//! with `bg_spec_free`. Every call returns a status code (`BG_OK` or one of
//! the `BG_ERR_*` values); on failure `bg_last_error` gives the message for
//! the calling thread. Strings returned by the library are freed with
//! `bg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use blockglue::entropy::entropy_sft;
use blockglue::gluing::{is_block_gluing, min_gluing_constant};
use blockglue::language::language_count;
use blockglue::spectrum::{init_scan, run, verdict_report, Budget};
use blockglue::{parse_spec, Error, SubshiftSpec};

pub const BG_OK: c_int = 0;
pub const BG_ERR_NULL: c_int = 1;
pub const BG_ERR_UTF8: c_int = 2;
pub const BG_ERR_SYNTAX: c_int = 3;
pub const BG_ERR_NOT_SFT: c_int = 4;
pub const BG_ERR_EMPTY: c_int = 5;
pub const BG_ERR_NOT_BINARY: c_int = 6;
pub const BG_ERR_INVALID_ARGUMENT: c_int = 7;
pub const BG_ERR_TOO_LARGE: c_int = 8;
pub const BG_ERR_NUMERIC: c_int = 9;
pub const BG_ERR_STATE: c_int = 10;
pub const BG_ERR_IO: c_int = 11;
pub const BG_ERR_NOT_BLOCK_GLUING: c_int = 12;
pub const BG_ERR_PANIC: c_int = 13;

/// Opaque parsed subshift spec.
pub struct BgSpec {
    inner: SubshiftSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn code_of(e: &Error) -> c_int {
    match e {
        Error::Syntax { .. }
        | Error::UnknownSymbol { .. }
        | Error::EmptyWord { .. }
        | Error::Alphabet(_) => BG_ERR_SYNTAX,
        Error::NotSft => BG_ERR_NOT_SFT,
        Error::EmptySubshift => BG_ERR_EMPTY,
        Error::NotBinary => BG_ERR_NOT_BINARY,
        Error::NotInLanguage(_)
        | Error::AlphabetMismatch
        | Error::InvalidArgument(_)
        | Error::InvalidBudget => BG_ERR_INVALID_ARGUMENT,
        Error::TooLarge { .. } => BG_ERR_TOO_LARGE,
        Error::NonConvergence { .. } | Error::ToleranceTooTight { .. } => BG_ERR_NUMERIC,
        Error::StateVersion { .. } | Error::CorruptState(_) => BG_ERR_STATE,
        Error::Io(_) => BG_ERR_IO,
        Error::NotBlockGluing { .. } => BG_ERR_NOT_BLOCK_GLUING,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (c_int, String)>) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BG_OK,
        Ok(Err((code, message))) => {
            set_error(message);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            BG_ERR_PANIC
        }
    }
}

fn domain(e: Error) -> (c_int, String) {
    (code_of(&e), e.to_string())
}

fn null(name: &str) -> (c_int, String) {
    (BG_ERR_NULL, format!("{name} is null"))
}

unsafe fn spec_ref<'a>(spec: *const BgSpec) -> Result<&'a SubshiftSpec, (c_int, String)> {
    spec.as_ref().map(|s| &s.inner).ok_or_else(|| null("spec"))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn bg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses spec-file text into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bg_spec_parse(text: *const c_char, out: *mut *mut BgSpec) -> c_int {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (BG_ERR_UTF8, e.to_string()))?;
        let inner = parse_spec(text).map_err(domain)?;
        *out = Box::into_raw(Box::new(BgSpec { inner }));
        Ok(())
    })
}

/// Frees a handle from `bg_spec_parse`. Null is ignored.
///
/// # Safety
/// `spec` must come from `bg_spec_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bg_spec_free(spec: *mut BgSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Entropy enclosure `[lo, hi]` (natural log) of an SFT with `hi - lo <= tol`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bg_entropy(
    spec: *const BgSpec,
    tol: f64,
    lo: *mut f64,
    hi: *mut f64,
) -> c_int {
    guard(|| {
        let spec = spec_ref(spec)?;
        if lo.is_null() || hi.is_null() {
            return Err(null("lo/hi"));
        }
        let e = entropy_sft(spec, tol).map_err(domain)?;
        *lo = e.lo;
        *hi = e.hi;
        Ok(())
    })
}

/// Sets `*result` to 1 if the subshift is c-block-gluing, 0 otherwise.
/// Specs with forbidden families get bounded evidence only.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bg_is_block_gluing(
    spec: *const BgSpec,
    c: u32,
    result: *mut c_int,
) -> c_int {
    guard(|| {
        let spec = spec_ref(spec)?;
        if result.is_null() {
            return Err(null("result"));
        }
        *result = c_int::from(is_block_gluing(spec, c as usize).map_err(domain)?.result);
        Ok(())
    })
}

/// Least `c <= c_max` with the SFT c-block-gluing, or -1.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bg_min_gluing_constant(
    spec: *const BgSpec,
    c_max: u32,
    result: *mut i64,
) -> c_int {
    guard(|| {
        let spec = spec_ref(spec)?;
        if result.is_null() {
            return Err(null("result"));
        }
        *result = min_gluing_constant(spec, c_max as usize)
            .map_err(domain)?
            .map_or(-1, |c| c as i64);
        Ok(())
    })
}

/// `|L(n)|` of an SFT. Fails with `BG_ERR_TOO_LARGE` past `u64`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bg_language_count(spec: *const BgSpec, n: u32, result: *mut u64) -> c_int {
    guard(|| {
        let spec = spec_ref(spec)?;
        if result.is_null() {
            return Err(null("result"));
        }
        let count = language_count(spec, n as usize).map_err(domain)?;
        *result = u64::try_from(count).map_err(|_| domain(Error::TooLarge { size: count }))?;
        Ok(())
    })
}

/// Runs the minimal-entropy search for `c` and writes the JSON report to
/// `*json` (free with `bg_string_free`). `max_order = 0` keeps the default.
///
/// # Safety
/// `json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bg_scan(
    c: u32,
    budget_seconds: f64,
    max_order: u32,
    json: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let c = c as usize;
        let mut budget = Budget::default_for(c);
        budget.max_seconds = budget_seconds;
        if max_order > 0 {
            budget.max_order = max_order as usize;
        }
        let state = run(init_scan(c, budget).map_err(domain)?).map_err(domain)?;
        let text = serde_json::to_string(&verdict_report(&state))
            .map_err(|e| (BG_ERR_IO, e.to_string()))?;
        *json = CString::new(text).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// Frees a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
