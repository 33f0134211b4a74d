//! C ABI over `competence-rating`.
//!
//! Surveys live behind an opaque `CrSurvey` handle created by
//! `cr_survey_new` and released with `cr_survey_free`. Every fallible call
//! returns a `CrStatus`; on failure `cr_last_error_message` describes the
//! most recent error raised on the calling thread. Status values 2, 3 and 4
//! match the exit codes of the command-line tool.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use competence_rating::{
    aggregate, degree_weighted_rating, degree_weights, eigenfactor, eigenfactor_weighted_rating, rate_survey,
    validate_survey, DiagonalPolicy, DispersionRow, Error, PowerIterationOptions, Scale, SurveyInstance,
    ValidationOptions,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DegenerateNetwork = 3,
    NoConvergence = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrDiagonalPolicy {
    Reject = 0,
    Coerce = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CrDispersionAggregate {
    pub total_n: usize,
    pub total_dev2: usize,
    pub total_dev3plus: usize,
    pub pct_dev2: f64,
    pub pct_dev3plus: f64,
    pub pct_dev2plus: f64,
}

/// Opaque survey handle.
pub struct CrSurvey {
    survey: SurveyInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).ok());
}

fn fail(status: CrStatus, message: impl Into<String>) -> CrStatus {
    set_last_error(message);
    status
}

fn from_error(e: Error) -> CrStatus {
    let status = match e {
        Error::DegenerateNetwork => CrStatus::DegenerateNetwork,
        Error::NoConvergence { .. } => CrStatus::NoConvergence,
        _ => CrStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> CrStatus) -> CrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(CrStatus::Panic, "internal panic"),
    }
}

/// Copies `src` into a caller buffer of `len` elements. A null `dst` skips
/// the copy.
unsafe fn write_slice(src: &[f64], dst: *mut f64, len: usize) -> Result<(), CrStatus> {
    if dst.is_null() {
        return Ok(());
    }
    if len < src.len() {
        return Err(fail(
            CrStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    Ok(())
}

unsafe fn write_out<T>(dst: *mut T, value: T) {
    if !dst.is_null() {
        *dst = value;
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Validates a survey and stores a new handle in `*out`.
///
/// `ratings` holds `n` values; `competence` holds `n * n` row-major cells,
/// each 0 or 1.
///
/// # Safety
/// `ratings` must point to `n` doubles, `competence` to `n * n` bytes, and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_survey_new(
    ratings: *const f64,
    competence: *const u8,
    n: usize,
    scale_min: f64,
    scale_max: f64,
    diagonal_policy: CrDiagonalPolicy,
    out: *mut *mut CrSurvey,
) -> CrStatus {
    guard(|| {
        if ratings.is_null() || competence.is_null() || out.is_null() {
            return fail(CrStatus::NullPointer, "null argument to cr_survey_new");
        }
        let Some(cells) = n.checked_mul(n) else {
            return fail(CrStatus::InvalidInput, "n is too large");
        };
        let ratings = std::slice::from_raw_parts(ratings, n);
        let cells = std::slice::from_raw_parts(competence, cells);
        let rows: Vec<Vec<f64>> = cells.chunks(n.max(1)).map(|r| r.iter().map(|&c| f64::from(c)).collect()).collect();
        let scale = match Scale::new(scale_min, scale_max) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let options = ValidationOptions {
            scale,
            diagonal_policy: match diagonal_policy {
                CrDiagonalPolicy::Reject => DiagonalPolicy::Reject,
                CrDiagonalPolicy::Coerce => DiagonalPolicy::Coerce,
            },
            strict_likert: false,
        };
        match validate_survey("", ratings, &rows, &options) {
            Ok(survey) => {
                *out = Box::into_raw(Box::new(CrSurvey { survey }));
                CrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `survey` must come from `cr_survey_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cr_survey_free(survey: *mut CrSurvey) {
    if !survey.is_null() {
        drop(Box::from_raw(survey));
    }
}

/// Number of students, or 0 for NULL.
///
/// # Safety
/// `survey` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cr_survey_len(survey: *const CrSurvey) -> usize {
    survey.as_ref().map_or(0, |s| s.survey.n())
}

/// Number of diagonal entries that were coerced to zero on construction.
///
/// # Safety
/// `survey` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cr_survey_warning_count(survey: *const CrSurvey) -> usize {
    survey.as_ref().map_or(0, |s| s.survey.warnings.len())
}

/// # Safety
/// `survey` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cr_arithmetic_mean(survey: *const CrSurvey, out: *mut f64) -> CrStatus {
    guard(|| {
        let (Some(s), false) = (survey.as_ref(), out.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument to cr_arithmetic_mean");
        };
        *out = s.survey.ratings.arithmetic_mean();
        CrStatus::Ok
    })
}

/// Degree-centrality weights (into `weights`, `len` slots, may be NULL) and
/// weighted rating (into `rating`, may be NULL).
///
/// # Safety
/// `survey` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_degree(survey: *const CrSurvey, weights: *mut f64, len: usize, rating: *mut f64) -> CrStatus {
    guard(|| {
        let Some(s) = survey.as_ref() else {
            return fail(CrStatus::NullPointer, "null survey");
        };
        let result = degree_weights(&s.survey.normalized())
            .and_then(|w| Ok((degree_weighted_rating(&s.survey.ratings, &w)?, w)));
        match result {
            Ok((r, w)) => {
                if let Err(status) = write_slice(w.weights(), weights, len) {
                    return status;
                }
                write_out(rating, r);
                CrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Eigenfactor weights, influence vector, weighted rating and iteration
/// count. Any output pointer may be NULL.
///
/// # Safety
/// `survey` must be a live handle; non-null outputs must be writable, with
/// `len` slots for the two vectors.
#[no_mangle]
pub unsafe extern "C" fn cr_eigenfactor(
    survey: *const CrSurvey,
    alpha: f64,
    tol: f64,
    max_iter: usize,
    weights: *mut f64,
    influence: *mut f64,
    len: usize,
    rating: *mut f64,
    iterations: *mut usize,
) -> CrStatus {
    guard(|| {
        let Some(s) = survey.as_ref() else {
            return fail(CrStatus::NullPointer, "null survey");
        };
        let options = PowerIterationOptions { tol, max_iter };
        let result = eigenfactor(&s.survey.normalized(), alpha, &options)
            .and_then(|e| Ok((eigenfactor_weighted_rating(&s.survey.ratings, &e.weights)?, e)));
        match result {
            Ok((r, e)) => {
                if let Err(status) = write_slice(e.weights.weights(), weights, len)
                    .and_then(|_| write_slice(e.influence.values(), influence, len))
                {
                    return status;
                }
                write_out(rating, r);
                write_out(iterations, e.influence.iterations());
                CrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Full weighted-rating report as a JSON string, or NULL on failure. Free the
/// result with `cr_string_free`.
///
/// # Safety
/// `survey` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cr_rate_json(survey: *const CrSurvey, alpha: f64, tol: f64, max_iter: usize) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let Some(s) = survey.as_ref() else {
            return fail(CrStatus::NullPointer, "null survey");
        };
        let report = match rate_survey(&s.survey, alpha, &PowerIterationOptions { tol, max_iter }) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        match serde_json::to_string(&report).map(CString::new) {
            Ok(Ok(text)) => {
                out = text.into_raw();
                CrStatus::Ok
            }
            _ => fail(CrStatus::InvalidInput, "report serialization failed"),
        }
    });
    out
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Aggregates pre-counted dispersion rows given as three parallel arrays of
/// `rows` entries.
///
/// # Safety
/// Each array must hold `rows` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cr_dispersion_aggregate(
    n: *const usize,
    dev2: *const usize,
    dev3plus: *const usize,
    rows: usize,
    out: *mut CrDispersionAggregate,
) -> CrStatus {
    guard(|| {
        if n.is_null() || dev2.is_null() || dev3plus.is_null() || out.is_null() {
            return fail(CrStatus::NullPointer, "null argument to cr_dispersion_aggregate");
        }
        let (n, dev2, dev3plus) = (
            std::slice::from_raw_parts(n, rows),
            std::slice::from_raw_parts(dev2, rows),
            std::slice::from_raw_parts(dev3plus, rows),
        );
        let rows: Result<Vec<DispersionRow>, Error> = (0..rows)
            .map(|i| DispersionRow::from_counts(format!("row {i}"), n[i], 0, dev2[i], dev3plus[i]))
            .collect();
        match rows.and_then(|r| aggregate(&r)) {
            Ok(a) => {
                *out = CrDispersionAggregate {
                    total_n: a.total_n,
                    total_dev2: a.total_dev2,
                    total_dev3plus: a.total_dev3plus,
                    pct_dev2: a.pct_dev2,
                    pct_dev3plus: a.pct_dev3plus,
                    pct_dev2plus: a.pct_dev2plus,
                };
                CrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
