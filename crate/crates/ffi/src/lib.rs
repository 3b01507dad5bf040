//! C interface to `pretzelc`.
//!
//! Functions return a [`PzError`] code (0 on success). After a failure,
//! `pz_last_error` describes it until the next call on the same thread.
//! Verdicts are opaque handles released with `pz_verdict_free`; strings
//! returned by the library are released with `pz_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pretzelc::classify::{analyze, Status, Verdict};
use pretzelc::fibered::{is_fibered, FiberStatus};
use pretzelc::lattice::{signature, SearchConfig};
use pretzelc::params::{classify_type, normalize, ParamList, PretzelKind};
use pretzelc::plumbing::determinant;
use pretzelc::report::AnalysisRecord;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PzError {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotAKnot = 4,
    Internal = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PzKind {
    Type1 = 1,
    Type2 = 2,
    Type3 = 3,
    Link = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PzFiber {
    Fibered = 1,
    NotFibered = 2,
    ReducesToType3 = 3,
    NotAKnot = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PzStatus {
    RibbonKnown = 1,
    NotSlice = 2,
    Exceptional = 3,
    ObstructionsVanish = 4,
    Inconclusive = 5,
    NotApplicable = 6,
}

/// Opaque analysis result.
pub struct PzVerdict {
    input: String,
    verdict: Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(code: PzError, msg: impl Into<String>) -> PzError {
    set_error(msg);
    code
}

/// Runs `f`, turning panics into `PzError::Panic`.
fn guard(f: impl FnOnce() -> PzError) -> PzError {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => fail(PzError::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PzError> {
    if s.is_null() {
        return Err(fail(PzError::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(PzError::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn read_knot(s: *const c_char) -> Result<ParamList, PzError> {
    let p: ParamList = read_str(s)?
        .parse()
        .map_err(|e: pretzelc::Error| fail(PzError::Parse, e.to_string()))?;
    let n = normalize(&p);
    if !classify_type(&n).is_knot() {
        return Err(fail(PzError::NotAKnot, format!("P({p}) is a link, not a knot")));
    }
    Ok(n)
}

macro_rules! check_out {
    ($p:expr) => {
        if $p.is_null() {
            return fail(PzError::NullArgument, "null output pointer");
        }
    };
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next call.
#[no_mangle]
pub extern "C" fn pz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Full analysis. `node_limit` 0 means no limit.
///
/// # Safety
/// `params` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pz_analyze(params: *const c_char, node_limit: u64, out: *mut *mut PzVerdict) -> PzError {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let p = match read_knot(params) {
            Ok(p) => p,
            Err(e) => return e,
        };
        let cfg = SearchConfig {
            node_limit: (node_limit > 0).then_some(node_limit),
            ..SearchConfig::default()
        };
        match analyze(&p, &cfg) {
            Ok(verdict) => {
                let input = read_str(params).unwrap_or_default().to_string();
                *out = Box::into_raw(Box::new(PzVerdict { input, verdict }));
                PzError::Ok
            }
            Err(e) => fail(PzError::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `v` must come from `pz_analyze` and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pz_verdict_free(v: *mut PzVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be a live verdict or null.
#[no_mangle]
pub unsafe extern "C" fn pz_verdict_kind(v: *const PzVerdict) -> PzKind {
    match v.as_ref().map(|v| v.verdict.kind) {
        Some(PretzelKind::Type1) => PzKind::Type1,
        Some(PretzelKind::Type2) => PzKind::Type2,
        Some(PretzelKind::Type3) => PzKind::Type3,
        _ => PzKind::Link,
    }
}

fn fiber_code(s: FiberStatus) -> PzFiber {
    match s {
        FiberStatus::Fibered => PzFiber::Fibered,
        FiberStatus::NotFibered => PzFiber::NotFibered,
        FiberStatus::ReducesToType3 => PzFiber::ReducesToType3,
        FiberStatus::NotAKnot => PzFiber::NotAKnot,
    }
}

/// # Safety
/// `v` must be a live verdict or null.
#[no_mangle]
pub unsafe extern "C" fn pz_verdict_fibered(v: *const PzVerdict) -> PzFiber {
    v.as_ref()
        .map_or(PzFiber::NotAKnot, |v| fiber_code(v.verdict.fibered.status))
}

/// # Safety
/// `v` must be a live verdict or null.
#[no_mangle]
pub unsafe extern "C" fn pz_verdict_status(v: *const PzVerdict) -> PzStatus {
    match v.as_ref().map(|v| &v.verdict.status) {
        Some(Status::RibbonKnown) => PzStatus::RibbonKnown,
        Some(Status::NotSlice(_)) => PzStatus::NotSlice,
        Some(Status::Exceptional) => PzStatus::Exceptional,
        Some(Status::ObstructionsVanish) => PzStatus::ObstructionsVanish,
        Some(Status::Inconclusive) => PzStatus::Inconclusive,
        _ => PzStatus::NotApplicable,
    }
}

/// The verdict as a JSON record; release with `pz_string_free`.
///
/// # Safety
/// `v` must be a live verdict; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pz_verdict_json(v: *const PzVerdict, out: *mut *mut c_char) -> PzError {
    guard(|| {
        check_out!(out);
        *out = ptr::null_mut();
        let Some(v) = v.as_ref() else {
            return fail(PzError::NullArgument, "null verdict");
        };
        let rec = AnalysisRecord::new(v.input.clone(), &v.verdict, None);
        match serde_json::to_string(&rec).map(CString::new) {
            Ok(Ok(s)) => {
                *out = s.into_raw();
                PzError::Ok
            }
            _ => fail(PzError::Internal, "cannot serialize verdict"),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn pz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Knot determinant, `|det|` of the plumbing form.
///
/// # Safety
/// `params` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pz_determinant(params: *const c_char, out: *mut u64) -> PzError {
    guard(|| {
        check_out!(out);
        let p = match read_knot(params) {
            Ok(p) => p,
            Err(e) => return e,
        };
        match determinant(&p).map(|d| u64::try_from(d)) {
            Ok(Ok(d)) => {
                *out = d;
                PzError::Ok
            }
            Ok(Err(_)) => fail(PzError::Internal, "determinant exceeds 64 bits"),
            Err(e) => fail(PzError::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `params` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pz_signature(params: *const c_char, out: *mut i64) -> PzError {
    guard(|| {
        check_out!(out);
        let p = match read_knot(params) {
            Ok(p) => p,
            Err(e) => return e,
        };
        match signature(&p) {
            Ok(s) => {
                *out = s;
                PzError::Ok
            }
            Err(e) => fail(PzError::Internal, e.to_string()),
        }
    })
}

/// Fiberedness of the normalized diagram, in the order given.
///
/// # Safety
/// `params` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pz_fibered(params: *const c_char, out: *mut PzFiber) -> PzError {
    guard(|| {
        check_out!(out);
        match read_knot(params) {
            Ok(p) => {
                *out = fiber_code(is_fibered(&p).status);
                PzError::Ok
            }
            Err(e) => e,
        }
    })
}
