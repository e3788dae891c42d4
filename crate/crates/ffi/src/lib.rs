//! C ABI surface for the conesym library.
//!
//! Every function is re-entrant and returns a [`ConesymStatus`]; results
//! come back through out-pointers.  Strings returned by this library must
//! be released with [`conesym_string_free`], matrices with
//! [`conesym_matrix_free`], cone handles with [`conesym_cone_free`].
//! Passing a null pointer where an argument is required gives
//! `CONESYM_STATUS_INVALID_ARGUMENT` and leaves the out-pointers untouched.

use std::ffi::{c_char, CStr, CString};

use num_traits::ToPrimitive;

use conesym::cone::{Cone, ConeInput};
use conesym::error::Error;
use conesym::hilbert::hilbert_basis;
use conesym::io::parse_input;
use conesym::linalg::{Int, Rat, RatMat};
use conesym::normal_form::{canonical_type, is_isomorphic, TypeLevel};
use conesym::report::run_job;

/// Outcome of a call through the C interface.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConesymStatus {
    /// The call succeeded.
    Ok = 0,
    /// The input text did not parse.
    ParseError = 1,
    /// A goal or construction failed its preconditions.
    GoalError = 2,
    /// A null pointer, empty dimension or malformed argument.
    InvalidArgument = 3,
    /// An unexpected internal condition.
    InternalError = 4,
    /// A result entry does not fit in the requested integer width.
    Overflow = 5,
}

/// Opaque handle to a cone.
pub struct ConesymCone {
    inner: Cone,
}

fn status_of(err: &Error) -> ConesymStatus {
    match err {
        Error::Parse { .. } => ConesymStatus::ParseError,
        _ => ConesymStatus::GoalError,
    }
}

fn export_string(text: String, out: *mut *mut c_char) -> ConesymStatus {
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            ConesymStatus::Ok
        }
        Err(_) => ConesymStatus::InternalError,
    }
}

/// Release a string returned by this library.
#[no_mangle]
pub extern "C" fn conesym_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe {
            let _ = CString::from_raw(s);
        }
    }
}

/// Release a matrix buffer returned by this library.
#[no_mangle]
pub extern "C" fn conesym_matrix_free(entries: *mut i64, rows: usize, cols: usize) {
    if !entries.is_null() {
        unsafe {
            let _ = Box::from_raw(std::slice::from_raw_parts_mut(entries, rows * cols));
        }
    }
}

/// Run a full job from input text and return the report.
///
/// The text uses the same format as the command line tool.  `IsoCheck`
/// goals are rejected here because the C interface does not read files.
/// Returns `CONESYM_STATUS_GOAL_ERROR` when any goal failed; the report
/// with the per-goal error paragraphs is still written to `out_report`.
#[no_mangle]
pub extern "C" fn conesym_run_text(
    input: *const c_char,
    out_report: *mut *mut c_char,
) -> ConesymStatus {
    if input.is_null() || out_report.is_null() {
        return ConesymStatus::InvalidArgument;
    }
    let text = match unsafe { CStr::from_ptr(input) }.to_str() {
        Ok(t) => t,
        Err(_) => return ConesymStatus::InvalidArgument,
    };
    let job = match parse_input(text) {
        Ok(job) => job,
        Err(e) => return status_of(&e),
    };
    let outcome = run_job(&job, |_| {
        Err(Error::Io("file access is not available through the C interface".into()))
    });
    let failed = outcome.failed_goals > 0;
    let status = export_string(outcome.text, out_report);
    if status != ConesymStatus::Ok {
        return status;
    }
    if failed {
        ConesymStatus::GoalError
    } else {
        ConesymStatus::Ok
    }
}

/// Build a cone from a row-major matrix of integer generators.
///
/// `entries` holds `rows * cols` values; `cols` is the ambient dimension.
#[no_mangle]
pub extern "C" fn conesym_cone_from_generators(
    entries: *const i64,
    rows: usize,
    cols: usize,
    out_cone: *mut *mut ConesymCone,
) -> ConesymStatus {
    if out_cone.is_null() || (entries.is_null() && rows > 0) || cols == 0 {
        return ConesymStatus::InvalidArgument;
    }
    let len = match rows.checked_mul(cols) {
        Some(len) => len,
        None => return ConesymStatus::InvalidArgument,
    };
    let flat = if len == 0 { &[][..] } else { unsafe { std::slice::from_raw_parts(entries, len) } };
    let matrix = if rows == 0 {
        RatMat::empty(0, cols)
    } else {
        RatMat::from_rows(
            flat.chunks(cols)
                .map(|row| row.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
                .collect(),
        )
    };
    let mut input = ConeInput::new(cols);
    input.generators = Some(matrix);
    match Cone::from_input(&input) {
        Ok(cone) => {
            unsafe { *out_cone = Box::into_raw(Box::new(ConesymCone { inner: cone })) };
            ConesymStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Release a cone handle.
#[no_mangle]
pub extern "C" fn conesym_cone_free(cone: *mut ConesymCone) {
    if !cone.is_null() {
        unsafe {
            let _ = Box::from_raw(cone);
        }
    }
}

/// The Hilbert basis of a cone, in working coordinates, as a row-major
/// `i64` matrix.  Returns `CONESYM_STATUS_OVERFLOW` when an entry does not
/// fit.  Release the buffer with `conesym_matrix_free`.
#[no_mangle]
pub extern "C" fn conesym_cone_hilbert_basis(
    cone: *const ConesymCone,
    out_entries: *mut *mut i64,
    out_rows: *mut usize,
    out_cols: *mut usize,
) -> ConesymStatus {
    if cone.is_null() || out_entries.is_null() || out_rows.is_null() || out_cols.is_null() {
        return ConesymStatus::InvalidArgument;
    }
    let cone = unsafe { &(*cone).inner };
    let basis = match hilbert_basis(cone) {
        Ok(b) => b,
        Err(e) => return status_of(&e),
    };
    let mut flat: Vec<i64> = Vec::with_capacity(basis.rows() * basis.cols());
    for row in basis.iter_rows() {
        for x in row {
            match x.to_i64() {
                Some(v) => flat.push(v),
                None => return ConesymStatus::Overflow,
            }
        }
    }
    unsafe {
        *out_rows = basis.rows();
        *out_cols = basis.cols();
        *out_entries = Box::into_raw(flat.into_boxed_slice()) as *mut i64;
    }
    ConesymStatus::Ok
}

/// The order of the integral automorphism group, as a decimal string
/// (group orders overflow fixed-width integers quickly).
#[no_mangle]
pub extern "C" fn conesym_cone_integral_automorphism_order(
    cone: *const ConesymCone,
    out_order: *mut *mut c_char,
) -> ConesymStatus {
    if cone.is_null() || out_order.is_null() {
        return ConesymStatus::InvalidArgument;
    }
    let cone = unsafe { &(*cone).inner };
    match conesym::engines::integral_automorphisms(cone) {
        Ok(result) => export_string(result.group.order().to_string(), out_order),
        Err(e) => status_of(&e),
    }
}

/// The canonical type of a cone, serialized as text.  Two cones are
/// related by a lattice-preserving linear bijection exactly when their
/// serializations agree (for equal lineality ranks).
#[no_mangle]
pub extern "C" fn conesym_cone_canonical_type(
    cone: *const ConesymCone,
    out_text: *mut *mut c_char,
) -> ConesymStatus {
    if cone.is_null() || out_text.is_null() {
        return ConesymStatus::InvalidArgument;
    }
    let cone = unsafe { &(*cone).inner };
    match canonical_type(cone, TypeLevel::Full) {
        Ok(t) => export_string(t.to_text(), out_text),
        Err(e) => status_of(&e),
    }
}

/// Decide whether two cones are related by a lattice-preserving linear
/// bijection.  Writes 1 or 0 to `out_isomorphic`.
#[no_mangle]
pub extern "C" fn conesym_cones_isomorphic(
    a: *const ConesymCone,
    b: *const ConesymCone,
    out_isomorphic: *mut i32,
) -> ConesymStatus {
    if a.is_null() || b.is_null() || out_isomorphic.is_null() {
        return ConesymStatus::InvalidArgument;
    }
    let a = unsafe { &(*a).inner };
    let b = unsafe { &(*b).inner };
    match is_isomorphic(a, b) {
        Ok(witness) => {
            unsafe { *out_isomorphic = witness.is_some() as i32 };
            ConesymStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
