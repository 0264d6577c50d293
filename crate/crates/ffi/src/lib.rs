//! C ABI over `siegelfc`.
//!
//! Every fallible call returns an [`SfcStatus`]; on failure a message is kept
//! per thread and can be read with [`sfc_last_error_message`]. Objects are
//! opaque handles released with their matching `*_free` function. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`sfc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use siegelfc::analysis::bessel_period;
use siegelfc::arith::rational_to_string;
use siegelfc::bqf::{Bqf, ClassGroup};
use siegelfc::halfint::{extract_half_integral, HalfIntegralForm};
use siegelfc::jacobi::jacobi_cusp;
use siegelfc::siegel::SiegelForm;
use siegelfc::table::Table;
use siegelfc::Error;

/// Result codes shared by every function in this library.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    Parse = 3,
    Precision = 4,
    Io = 5,
    Panic = 6,
}

/// A Siegel modular form of degree 2 with exact coefficients.
pub struct SfcSiegelForm(SiegelForm);

/// A half-integral weight form given by its coefficient table.
pub struct SfcHalfForm(HalfIntegralForm);

/// The class group of an imaginary quadratic field.
pub struct SfcClassGroup(ClassGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SfcStatus {
    match e {
        Error::Parse(_) => SfcStatus::Parse,
        Error::Io(_) => SfcStatus::Io,
        Error::PrecisionExhausted { .. } | Error::InsufficientPrecision { .. } => {
            SfcStatus::Precision
        }
        _ => SfcStatus::InvalidInput,
    }
}

fn guard<F>(f: F) -> SfcStatus
where
    F: FnOnce() -> Result<(), (SfcStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SfcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SfcStatus::Panic
        }
    }
}

fn lift<T>(r: siegelfc::Result<T>) -> Result<T, (SfcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (SfcStatus, String) {
    (SfcStatus::NullArgument, format!("{name} is null"))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, (SfcStatus, String)> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn put<T>(out: *mut T, v: T, name: &str) -> Result<(), (SfcStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(v);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

fn corpus_weight(weight: i64) -> Result<i64, (SfcStatus, String)> {
    if weight == 10 || weight == 12 {
        Ok(weight)
    } else {
        Err((
            SfcStatus::InvalidInput,
            format!("built-in corpus has weights 10 and 12, got {weight}"),
        ))
    }
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sfc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sfc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Maass lift of φ_{weight,1} (weight 10 or 12), coefficients for |disc| < prec.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_siegel_maass_lift(
    weight: i64,
    prec: i64,
    out: *mut *mut SfcSiegelForm,
) -> SfcStatus {
    guard(|| {
        let phi = lift(jacobi_cusp(corpus_weight(weight)?, prec))?;
        let f = lift(SiegelForm::maass_lift(&phi, prec))?;
        put(out, Box::into_raw(Box::new(SfcSiegelForm(f))), "out")
    })
}

/// Loads a Siegel form from a JSON coefficient table.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_siegel_from_json(
    json: *const c_char,
    out: *mut *mut SfcSiegelForm,
) -> SfcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (SfcStatus::Parse, e.to_string()))?;
        let f = lift(Table::from_json(text).and_then(|t| t.to_siegel()))?;
        put(out, Box::into_raw(Box::new(SfcSiegelForm(f))), "out")
    })
}

/// a(F, (a, b, c)) as a "num/den" string.
///
/// # Safety
/// `form` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_siegel_coefficient(
    form: *const SfcSiegelForm,
    a: i64,
    b: i64,
    c: i64,
    out: *mut *mut c_char,
) -> SfcStatus {
    guard(|| {
        let f = deref(form, "form")?;
        let v = lift(f.0.coefficient(&Bqf::new(a, b, c)))?;
        put(out, to_c_string(rational_to_string(&v)), "out")
    })
}

/// The form's coefficient table as JSON.
///
/// # Safety
/// `form` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_siegel_to_json(
    form: *const SfcSiegelForm,
    out: *mut *mut c_char,
) -> SfcStatus {
    guard(|| {
        let f = deref(form, "form")?;
        let t = lift(Table::from_siegel(&f.0))?;
        put(out, to_c_string(t.to_json()), "out")
    })
}

/// # Safety
/// `form` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sfc_siegel_free(form: *mut SfcSiegelForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Half-integral weight form extracted from `form` at `p` (1 or an odd prime),
/// coefficients for 1 ≤ m < prec.
///
/// # Safety
/// `form` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_half_extract(
    form: *const SfcSiegelForm,
    p: u64,
    prec: u64,
    out: *mut *mut SfcHalfForm,
) -> SfcStatus {
    guard(|| {
        let f = deref(form, "form")?;
        let h = lift(extract_half_integral(&f.0, p, prec))?;
        put(out, Box::into_raw(Box::new(SfcHalfForm(h))), "out")
    })
}

/// Eichler–Zagier image of φ_{weight,1} (weight 10 or 12), n < prec.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_half_ez(
    weight: i64,
    prec: i64,
    out: *mut *mut SfcHalfForm,
) -> SfcStatus {
    guard(|| {
        let phi = lift(jacobi_cusp(corpus_weight(weight)?, prec))?;
        let h = lift(phi.ez_to_half())?;
        put(out, Box::into_raw(Box::new(SfcHalfForm(h))), "out")
    })
}

/// Writes κ (weight κ + 1/2), the level and the precision bound.
///
/// # Safety
/// `form` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_half_info(
    form: *const SfcHalfForm,
    kappa: *mut i64,
    level: *mut u64,
    prec: *mut u64,
) -> SfcStatus {
    guard(|| {
        let h = deref(form, "form")?;
        put(kappa, h.0.kappa(), "kappa")?;
        put(level, h.0.level(), "level")?;
        put(prec, h.0.prec(), "prec")
    })
}

/// a(f, n) as a "num/den" string.
///
/// # Safety
/// `form` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_half_coefficient(
    form: *const SfcHalfForm,
    n: u64,
    out: *mut *mut c_char,
) -> SfcStatus {
    guard(|| {
        let h = deref(form, "form")?;
        let v = lift(h.0.coeff(n))?;
        put(out, to_c_string(rational_to_string(&v)), "out")
    })
}

/// The form's coefficient table as JSON.
///
/// # Safety
/// `form` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_half_to_json(
    form: *const SfcHalfForm,
    out: *mut *mut c_char,
) -> SfcStatus {
    guard(|| {
        let h = deref(form, "form")?;
        put(out, to_c_string(Table::from_half(&h.0).to_json()), "out")
    })
}

/// # Safety
/// `form` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sfc_half_free(form: *mut SfcHalfForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Class group of the fundamental discriminant −d (`d` may be given with
/// either sign).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_class_group_new(d: i64, out: *mut *mut SfcClassGroup) -> SfcStatus {
    guard(|| {
        let g = lift(ClassGroup::new(d.abs()))?;
        put(out, Box::into_raw(Box::new(SfcClassGroup(g))), "out")
    })
}

/// # Safety
/// `group` must be a live handle; `h` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_class_group_order(
    group: *const SfcClassGroup,
    h: *mut u64,
) -> SfcStatus {
    guard(|| {
        let g = deref(group, "group")?;
        put(h, g.0.class_number() as u64, "h")
    })
}

/// The group as JSON: discriminant, class number, reduced forms, generators.
///
/// # Safety
/// `group` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_class_group_to_json(
    group: *const SfcClassGroup,
    out: *mut *mut c_char,
) -> SfcStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let s =
            serde_json::to_string(&g.0.to_json()).map_err(|e| (SfcStatus::Parse, e.to_string()))?;
        put(out, to_c_string(s), "out")
    })
}

/// # Safety
/// `group` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sfc_class_group_free(group: *mut SfcClassGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// R(F, K, Λ) for the character with index `chi` (0 is trivial).
///
/// # Safety
/// `form` and `group` must be live handles; `re` and `im` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sfc_bessel_period(
    form: *const SfcSiegelForm,
    group: *const SfcClassGroup,
    chi: u64,
    re: *mut f64,
    im: *mut f64,
) -> SfcStatus {
    guard(|| {
        let f = deref(form, "form")?;
        let g = deref(group, "group")?;
        let chars = g.0.characters();
        let c = chars.get(chi as usize).ok_or_else(|| {
            (
                SfcStatus::InvalidInput,
                format!("character index {chi} out of range (h = {})", chars.len()),
            )
        })?;
        let r = lift(bessel_period(&f.0, &g.0, c))?;
        put(re, r.re, "re")?;
        put(im, r.im, "im")
    })
}
