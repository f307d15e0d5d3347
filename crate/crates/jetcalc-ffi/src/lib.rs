//! C ABI over the jetcalc engine.
//!
//! Conventions: every function returning `JcStatus` reports success as
//! `JC_STATUS_OK` (0). Strings returned through out-parameters are
//! NUL-terminated, allocated by this library, and must be released with
//! [`jc_string_free`]. On failure a thread-local message is set and can
//! be fetched with [`jc_last_error`]. Tower handles are opaque; create
//! with [`jc_tower_new`], release with [`jc_tower_free`]. A handle may be
//! shared across threads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use jetcalc::bigness::{morse_criterion_with, technical_lemma_audit_with};
use jetcalc::cli::{eval, parse, validate};
use jetcalc::degeneracy::{degeneracy_report, DegeneracyInput};
use jetcalc::schur::{
    numerical_positivity_report, schur_delta, series_inverse, ClassSequence, Partition,
};
use jetcalc::towerchow::{Tower, TowerGeometry};
use jetcalc::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Precondition = 3,
    ParseError = 4,
    /// The computation ran but found no certificate within the cap.
    NoCertificate = 5,
}

/// Opaque evaluation context for one tower geometry.
pub struct JcTower {
    inner: Tower,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let cstring = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_of(error: &Error) -> JcStatus {
    match error {
        Error::Parse(_) | Error::OutOfRange { .. } => JcStatus::ParseError,
        Error::Precondition(_) => JcStatus::Precondition,
        _ => JcStatus::InvalidArgument,
    }
}

fn fail(error: &Error) -> JcStatus {
    set_error(&error.to_string());
    status_of(error)
}

fn emit(out: *mut *mut c_char, text: String) -> JcStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return JcStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            JcStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL");
            JcStatus::InvalidArgument
        }
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn jc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Fetch and clear the thread-local error message for the last failing
/// call. Returns an allocated string (free with [`jc_string_free`]) or
/// null when no error is pending.
#[no_mangle]
pub extern "C" fn jc_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow_mut().take() {
        Some(msg) => msg.into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Release a string allocated by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through one of this
/// library's out-parameters (or [`jc_last_error`]) and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create a tower context for the complete intersection with ambient
/// dimension `ambient_dim` and codimension `codim`.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_tower_new(
    ambient_dim: u32,
    codim: u32,
    out: *mut *mut JcTower,
) -> JcStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return JcStatus::NullPointer;
    }
    match TowerGeometry::new(ambient_dim as usize, codim as usize) {
        Ok(geom) => {
            let handle = Box::new(JcTower {
                inner: Tower::new(geom),
            });
            unsafe { *out = Box::into_raw(handle) };
            JcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release a tower context.
///
/// # Safety
/// `tower` must come from [`jc_tower_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jc_tower_free(tower: *mut JcTower) {
    if !tower.is_null() {
        drop(Box::from_raw(tower));
    }
}

unsafe fn tower_ref<'a>(tower: *const JcTower) -> Option<&'a JcTower> {
    tower.as_ref()
}

/// Critical jet order of the tower, or 0 when the handle is null.
///
/// # Safety
/// `tower` must be a live handle from [`jc_tower_new`] or null.
#[no_mangle]
pub unsafe extern "C" fn jc_tower_kappa(tower: *const JcTower) -> u32 {
    tower_ref(tower).map_or(0, |t| t.inner.geom().kappa as u32)
}

/// Dimension of the intersection itself, or 0 when the handle is null.
///
/// # Safety
/// `tower` must be a live handle from [`jc_tower_new`] or null.
#[no_mangle]
pub unsafe extern "C" fn jc_tower_dim(tower: *const JcTower) -> u32 {
    tower_ref(tower).map_or(0, |t| t.inner.geom().dim as u32)
}

/// Segre polynomials of the cotangent bundle twisted by `m`, as a JSON
/// document `{"N", "c", "m", "segre": [poly, ..]}`.
///
/// # Safety
/// `tower` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_segre_json(
    tower: *const JcTower,
    m: i64,
    out: *mut *mut c_char,
) -> JcStatus {
    let Some(handle) = tower_ref(tower) else {
        set_error("tower handle is null");
        return JcStatus::NullPointer;
    };
    let geom = handle.inner.geom();
    let segre = handle.inner.base_segre(m);
    let doc = serde_json::json!({
        "N": geom.ambient_dim,
        "c": geom.codim,
        "m": m,
        "segre": segre.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
    });
    emit(out, doc.to_string())
}

/// Parse an expression, evaluate it at `level`, integrate, and return the
/// result: canonical text when `json` is false, a JSON term list
/// otherwise.
///
/// # Safety
/// `tower` must be a live handle; `src` must point to a NUL-terminated
/// string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_integrate_expr(
    tower: *const JcTower,
    level: u32,
    src: *const c_char,
    json: bool,
    out: *mut *mut c_char,
) -> JcStatus {
    let Some(handle) = tower_ref(tower) else {
        set_error("tower handle is null");
        return JcStatus::NullPointer;
    };
    if src.is_null() {
        set_error("expression pointer is null");
        return JcStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(src).to_str() else {
        set_error("expression is not valid UTF-8");
        return JcStatus::InvalidArgument;
    };
    let geom = handle.inner.geom();
    let result = parse(text)
        .and_then(|expr| {
            validate(&expr, geom.codim, geom.kappa, level as usize).map(|_| expr)
        })
        .and_then(|expr| eval(&expr, &handle.inner, level as usize))
        .and_then(|cls| handle.inner.integrate(&cls));
    match result {
        Ok(poly) => {
            let text = if json {
                poly.to_json().to_string()
            } else {
                poly.to_string()
            };
            emit(out, text)
        }
        Err(e) => fail(&e),
    }
}

/// Run the Morse comparison and return the report JSON. Returns
/// `JC_STATUS_NO_CERTIFICATE` (with the JSON still written) when no bound
/// at most `delta_max` certifies.
///
/// # Safety
/// `tower` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_morse_json(
    tower: *const JcTower,
    a: u32,
    delta_max: u32,
    out: *mut *mut c_char,
) -> JcStatus {
    let Some(handle) = tower_ref(tower) else {
        set_error("tower handle is null");
        return JcStatus::NullPointer;
    };
    match morse_criterion_with(&handle.inner, a, delta_max) {
        Ok(report) => {
            let status = emit(out, report.to_json().to_string());
            if status == JcStatus::Ok && report.delta.is_none() {
                set_error("no certified bound within the cap");
                JcStatus::NoCertificate
            } else {
                status
            }
        }
        Err(e) => fail(&e),
    }
}

/// Run the numerical-positivity report and return its JSON. Returns
/// `JC_STATUS_NO_CERTIFICATE` (with the JSON still written) when some
/// partition stayed unresolved within the cap.
///
/// # Safety
/// `tower` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_positivity_json(
    tower: *const JcTower,
    a: i64,
    d_max: u32,
    out: *mut *mut c_char,
) -> JcStatus {
    let Some(handle) = tower_ref(tower) else {
        set_error("tower handle is null");
        return JcStatus::NullPointer;
    };
    match numerical_positivity_report(&handle.inner.geom(), a, d_max) {
        Ok(report) => {
            let status = emit(out, report.to_json().to_string());
            if status == JcStatus::Ok && report.d_bound.is_none() {
                set_error("some partition has no certified bound within the cap");
                JcStatus::NoCertificate
            } else {
                status
            }
        }
        Err(e) => fail(&e),
    }
}

/// Run the degree-estimate audit and return its JSON.
///
/// # Safety
/// `tower` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_audit_json(
    tower: *const JcTower,
    out: *mut *mut c_char,
) -> JcStatus {
    let Some(handle) = tower_ref(tower) else {
        set_error("tower handle is null");
        return JcStatus::NullPointer;
    };
    match technical_lemma_audit_with(&handle.inner) {
        Ok(report) => emit(out, report.to_json().to_string()),
        Err(e) => fail(&e),
    }
}

/// Degeneracy-locus dimension count, as one-line JSON.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_degeneracy_json(
    ambient_dim: u32,
    hypersurfaces: u32,
    out: *mut *mut c_char,
) -> JcStatus {
    match DegeneracyInput::new(ambient_dim as usize, hypersurfaces as usize) {
        Ok(input) => emit(out, degeneracy_report(input).to_json().to_string()),
        Err(e) => fail(&e),
    }
}

/// Verify the conjugate-partition determinant identity for all partitions
/// of weight up to `weight` over the formal sequence. Returns
/// `JC_STATUS_OK` when every identity holds.
#[no_mangle]
pub extern "C" fn jc_schur_verify(weight: u32) -> JcStatus {
    if weight == 0 || weight > 12 {
        set_error("weight must be between 1 and 12");
        return JcStatus::InvalidArgument;
    }
    let formal = ClassSequence::formal(weight as usize);
    let inverse = series_inverse(&formal, weight as usize);
    for w in 1..=weight {
        for lambda in Partition::partitions_of(w) {
            if schur_delta(&lambda, &formal) != schur_delta(&lambda.conjugate(), &inverse) {
                set_error("determinant identity failed");
                return JcStatus::NoCertificate;
            }
        }
    }
    JcStatus::Ok
}
