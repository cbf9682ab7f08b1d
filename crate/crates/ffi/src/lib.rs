//! C ABI over `cubic_approx`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`CaStatus`]; the message of the last failure on the calling thread is
//! available from [`ca_last_error_message`]. Strings returned by the library
//! are freed with [`ca_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubic_approx::algebra::Place;
use cubic_approx::classifier::{classify, Case, ClassificationResult, CubicHypersurface};
use cubic_approx::cli::{report_json, run_report, ProblemSpec};
use cubic_approx::heights::{dist, ProjPoint};
use cubic_approx::{Alpha, Error};

/// Result codes. `CA_STATUS_OK` is zero; library errors map one to one onto
/// the error kinds of the Rust API.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    ParseError = 10,
    SingularChange = 11,
    ZeroInput = 12,
    DimensionMismatch = 13,
    PointNotOnX = 14,
    SingularAtP = 15,
    Reducible = 16,
    WorseThanNode = 17,
    PointNotOnCurve = 18,
    PointOnLine = 19,
    NotALineOnX = 20,
    NoQuadraticPointFound = 21,
    EmptyLocalQuadric = 22,
    BranchNotInKv = 23,
    NoApproximants = 24,
    NoRationalLineKnown = 25,
    Undecided = 26,
    Unsupported = 27,
    Invalid = 28,
    Overflow = 29,
    Io = 30,
}

impl From<&Error> for CaStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => CaStatus::ParseError,
            Error::SingularChange => CaStatus::SingularChange,
            Error::ZeroInput => CaStatus::ZeroInput,
            Error::DimensionMismatch { .. } => CaStatus::DimensionMismatch,
            Error::PointNotOnX => CaStatus::PointNotOnX,
            Error::SingularAtP => CaStatus::SingularAtP,
            Error::Reducible(_) => CaStatus::Reducible,
            Error::WorseThanNode => CaStatus::WorseThanNode,
            Error::PointNotOnCurve => CaStatus::PointNotOnCurve,
            Error::PointOnLine => CaStatus::PointOnLine,
            Error::NotALineOnX => CaStatus::NotALineOnX,
            Error::NoQuadraticPointFound { .. } => CaStatus::NoQuadraticPointFound,
            Error::EmptyLocalQuadric => CaStatus::EmptyLocalQuadric,
            Error::BranchNotInKv => CaStatus::BranchNotInKv,
            Error::NoApproximants => CaStatus::NoApproximants,
            Error::NoRationalLineKnown => CaStatus::NoRationalLineKnown,
            Error::Undecided(_) => CaStatus::Undecided,
            Error::Unsupported(_) => CaStatus::Unsupported,
            Error::Invalid(_) => CaStatus::Invalid,
            Error::Overflow(_) => CaStatus::Overflow,
            Error::Io(_) => CaStatus::Io,
        }
    }
}

/// Classified case of a point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaCase {
    OnRationalLine = 0,
    IsolatedInSection = 1,
    RationalTangentLines = 2,
    Generic = 3,
}

impl From<Case> for CaCase {
    fn from(c: Case) -> Self {
        match c {
            Case::OnRationalLine => CaCase::OnRationalLine,
            Case::IsolatedInSection => CaCase::IsolatedInSection,
            Case::RationalTangentLines => CaCase::RationalTangentLines,
            Case::Generic => CaCase::Generic,
        }
    }
}

/// A cubic hypersurface.
pub struct CaHypersurface(CubicHypersurface);

/// A point of projective space with integer coordinates.
pub struct CaPoint(ProjPoint);

/// The outcome of a classification.
pub struct CaClassification(ClassificationResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CaStatus, msg: String) -> CaStatus {
    set_error(msg);
    status
}

/// Runs `f`, recording errors and turning panics into `CA_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> Result<(), CaStatus>) -> CaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CaStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(CaStatus::Panic, "internal panic".into()),
    }
}

fn lib_err(e: Error) -> CaStatus {
    fail(CaStatus::from(&e), format!("{}: {e}", e.kind()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, CaStatus> {
    if p.is_null() {
        return Err(fail(CaStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CaStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, CaStatus> {
    p.as_ref()
        .ok_or_else(|| fail(CaStatus::NullPointer, "null handle argument".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), CaStatus> {
    if out.is_null() {
        Err(fail(CaStatus::NullPointer, "null output argument".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ca_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ca_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ca_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a cubic form in at least `min_vars` variables `x0, x1, ...`.
///
/// # Safety
/// `form` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ca_hypersurface_parse(
    form: *const c_char,
    min_vars: usize,
    out: *mut *mut CaHypersurface,
) -> CaStatus {
    guard(|| {
        out_ptr(out)?;
        let x = CubicHypersurface::parse(text(form)?, min_vars).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CaHypersurface(x)));
        Ok(())
    })
}

/// Number of homogeneous coordinates of the ambient space.
///
/// # Safety
/// `x` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ca_hypersurface_coords(x: *const CaHypersurface) -> usize {
    x.as_ref().map_or(0, |x| x.0.ambient_dim() + 1)
}

/// Whether `p` lies on `x`; 1 for yes, 0 for no or on bad arguments.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn ca_hypersurface_contains(
    x: *const CaHypersurface,
    p: *const CaPoint,
) -> i32 {
    match (x.as_ref(), p.as_ref()) {
        (Some(x), Some(p)) if p.0.len() == x.0.ambient_dim() + 1 => x.0.contains(&p.0) as i32,
        _ => 0,
    }
}

/// # Safety
/// `x` must be null or a handle from [`ca_hypersurface_parse`].
#[no_mangle]
pub unsafe extern "C" fn ca_hypersurface_free(x: *mut CaHypersurface) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Parses a point such as `"3:4:5:-6"`.
///
/// # Safety
/// `s` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ca_point_parse(s: *const c_char, out: *mut *mut CaPoint) -> CaStatus {
    guard(|| {
        out_ptr(out)?;
        let p: ProjPoint = text(s)?.parse().map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CaPoint(p)));
        Ok(())
    })
}

/// Canonical text of a point; free with [`ca_string_free`].
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ca_point_to_string(p: *const CaPoint) -> *mut c_char {
    p.as_ref()
        .map_or(ptr::null_mut(), |p| to_c_string(p.0.to_string()))
}

/// # Safety
/// `p` must be null or a handle from [`ca_point_parse`].
#[no_mangle]
pub unsafe extern "C" fn ca_point_free(p: *mut CaPoint) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `dist(p, q)` at `place` as a nul-terminated rational, e.g. `"1/25"`.
///
/// # Safety
/// Handles must be live, `place` nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ca_dist(
    p: *const CaPoint,
    q: *const CaPoint,
    place: *const c_char,
    out: *mut *mut c_char,
) -> CaStatus {
    guard(|| {
        out_ptr(out)?;
        let v: Place = text(place)?.parse().map_err(lib_err)?;
        let d = dist(&deref(p)?.0, &deref(q)?.0, v).map_err(lib_err)?;
        *out = to_c_string(d.to_string());
        Ok(())
    })
}

/// Predicts the approximation constant of `p` on `x` at `place`
/// (`"real"` or `"p=<prime>"`).
///
/// # Safety
/// Handles must be live, `place` nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ca_classify(
    x: *const CaHypersurface,
    p: *const CaPoint,
    place: *const c_char,
    search_bound: u64,
    out: *mut *mut CaClassification,
) -> CaStatus {
    guard(|| {
        out_ptr(out)?;
        let v: Place = text(place)?.parse().map_err(lib_err)?;
        let r = classify(&deref(x)?.0, &deref(p)?.0, v, search_bound).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CaClassification(r)));
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ca_classification_case(
    c: *const CaClassification,
    out: *mut CaCase,
) -> CaStatus {
    guard(|| {
        out_ptr(out)?;
        *out = deref(c)?.0.case.into();
        Ok(())
    })
}

/// Predicted constant as `num / den` with `den > 0`; `den = 0` means
/// infinity.
///
/// # Safety
/// `c` must be a live handle; `num` and `den` valid.
#[no_mangle]
pub unsafe extern "C" fn ca_classification_alpha(
    c: *const CaClassification,
    num: *mut i64,
    den: *mut i64,
) -> CaStatus {
    guard(|| {
        out_ptr(num)?;
        out_ptr(den)?;
        match &deref(c)?.0.predicted_alpha {
            Alpha::Infinite => {
                *num = 1;
                *den = 0;
            }
            Alpha::Finite(r) => {
                let (n, d) = (r.numer().to_string(), r.denom().to_string());
                *num = n
                    .parse()
                    .map_err(|_| fail(CaStatus::Overflow, "numerator exceeds 64 bits".into()))?;
                *den = d
                    .parse()
                    .map_err(|_| fail(CaStatus::Overflow, "denominator exceeds 64 bits".into()))?;
            }
        }
        Ok(())
    })
}

/// 1 when the classification is proved, 0 when heuristic.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ca_classification_is_proved(c: *const CaClassification) -> i32 {
    c.as_ref().map_or(0, |c| {
        matches!(c.0.confidence, cubic_approx::classifier::Confidence::Proved) as i32
    })
}

/// The full result with certificates as JSON; free with [`ca_string_free`].
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ca_classification_json(c: *const CaClassification) -> *mut c_char {
    c.as_ref().map_or(ptr::null_mut(), |c| {
        to_c_string(serde_json::to_string_pretty(&c.0).expect("classification serializes"))
    })
}

/// # Safety
/// `c` must be null or a handle from [`ca_classify`].
#[no_mangle]
pub unsafe extern "C" fn ca_classification_free(c: *mut CaClassification) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs the full pipeline on a problem given as `key=value` lines and
/// returns the JSON report; free with [`ca_string_free`].
///
/// # Safety
/// `problem` must be nul-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ca_run_report(problem: *const c_char, out: *mut *mut c_char) -> CaStatus {
    guard(|| {
        out_ptr(out)?;
        let spec = ProblemSpec::parse(text(problem)?).map_err(lib_err)?;
        let run = run_report(&spec).map_err(lib_err)?;
        *out = to_c_string(report_json(&run.report));
        Ok(())
    })
}
