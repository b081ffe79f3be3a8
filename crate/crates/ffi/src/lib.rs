//! C interface to `rectchar`.
//!
//! Every function returns an [`RcStatus`]. Results come back through out
//! pointers; strings are NUL-terminated, heap-allocated by this library
//! and released with [`rc_string_free`]. Polynomials are opaque [`RcPoly`]
//! handles released with [`rc_poly_free`]. After a non-OK status,
//! [`rc_last_error_message`] describes the failure on the calling thread.
//!
//! Partitions are passed as strings such as `"4,3,1"`, or `"-"` for the
//! empty partition. Big integers and rationals are returned as decimal
//! strings (`"-6"`, `"3/2"`).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use rectchar::character::{mn_character, normalized_character};
use rectchar::frobenius::{f_k_polynomial, flip};
use rectchar::interp::{conjecture1_check, f_mu_interpolate};
use rectchar::leading::g_k_leading;
use rectchar::permutation::DEFAULT_ENUMERATION_CAP;
use rectchar::rect::{factorization_poly, theorem1_check};
use rectchar::schur::lemma_check;
use rectchar::series::rectangle_var_names;
use rectchar::{Error, IntPoly, Partition};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    /// A required pointer was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument was malformed or out of range (bad partition, shape or size).
    InvalidArgument = 3,
    /// A computation would exceed a size cap.
    CapExceeded = 4,
    /// An exact division or integrality step failed.
    NonIntegral = 5,
    /// Any other failure inside the library.
    Internal = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Opaque polynomial handle.
pub struct RcPoly {
    poly: IntPoly,
    names: Vec<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn status_of(err: &Error) -> RcStatus {
    match err {
        Error::CapExceeded { .. } => RcStatus::CapExceeded,
        Error::NonIntegral(_) => RcStatus::NonIntegral,
        Error::InsufficientDepth { .. } | Error::SeriesPrecondition(_) | Error::Interpolation(_) => RcStatus::Internal,
        _ => RcStatus::InvalidArgument,
    }
}

/// Failure inside a call, before it is turned into a status.
enum Fail {
    Status(RcStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> RcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err(Fail::Status(status, message))) => {
            set_error(message);
            status
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {message}"));
            RcStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be NULL or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if ptr.is_null() {
        return Err(Fail::Status(RcStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Fail::Status(RcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_partition(ptr: *const c_char, what: &str) -> Result<Partition, Fail> {
    Ok(read_str(ptr, what)?.parse::<Partition>()?)
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(RcStatus::NullPointer, format!("{what} is NULL")));
    }
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail::Status(RcStatus::Internal, "string contains NUL".into()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message for the last failed call on this thread, or NULL. The
/// caller owns the result.
#[no_mangle]
pub extern "C" fn rc_last_error_message() -> *mut c_char {
    LAST_ERROR
        .with(|e| e.borrow().clone())
        .and_then(|m| CString::new(m).ok())
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// Character value `χ^shape(cycle_type)`; fixed points may be omitted
/// from `cycle_type`.
///
/// # Safety
/// String arguments must be valid C strings; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_chi(shape: *const c_char, cycle_type: *const c_char, out_value: *mut *mut c_char) -> RcStatus {
    guard(|| {
        check_out(out_value, "out_value")?;
        let shape = read_partition(shape, "shape")?;
        let mu = read_partition(cycle_type, "cycle_type")?;
        if mu.size() > shape.size() {
            return Err(Error::SizeMismatch(format!("|{mu}| exceeds |{shape}|")).into());
        }
        let value = mn_character(&shape, &mu.with_ones(shape.size() - mu.size()))?;
        *out_value = to_c_string(value.to_string())?;
        Ok(())
    })
}

/// Normalized character `(n)_k χ^shape(mu, 1^{n-k}) / f^shape` as a
/// decimal rational.
///
/// # Safety
/// As for [`rc_chi`].
#[no_mangle]
pub unsafe extern "C" fn rc_normalized_character(
    shape: *const c_char,
    mu: *const c_char,
    out_value: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        check_out(out_value, "out_value")?;
        let value = normalized_character(&read_partition(shape, "shape")?, &read_partition(mu, "mu")?)?;
        *out_value = to_c_string(value.to_string())?;
        Ok(())
    })
}

/// Whether the normalized character of the `p×q` rectangle at `mu`
/// equals the factorization polynomial evaluated at `(p, q)`.
///
/// # Safety
/// `mu` must be a valid C string; `out_equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_theorem1_check(p: usize, q: usize, mu: *const c_char, out_equal: *mut bool) -> RcStatus {
    guard(|| {
        check_out(out_equal, "out_equal")?;
        *out_equal = theorem1_check(p, q, &read_partition(mu, "mu")?, DEFAULT_ENUMERATION_CAP)?;
        Ok(())
    })
}

/// The hook lemma for `lambda` inside the `p×q` rectangle.
///
/// # Safety
/// `lambda` must be a valid C string; `out_holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_lemma_check(lambda: *const c_char, p: usize, q: usize, out_holds: *mut bool) -> RcStatus {
    guard(|| {
        check_out(out_holds, "out_holds")?;
        *out_holds = lemma_check(&read_partition(lambda, "lambda")?, p, q)?;
        Ok(())
    })
}

/// Interpolates `F_mu` for `m` rectangles and checks its flipped
/// coefficients. `out_json` (optional, may be NULL) receives the report.
///
/// # Safety
/// `mu` must be a valid C string; `out_passed` must be writable;
/// `out_json` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn rc_conjecture_check(
    m: usize,
    mu: *const c_char,
    out_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        check_out(out_passed, "out_passed")?;
        let report = conjecture1_check(m, &read_partition(mu, "mu")?)?;
        *out_passed = report.passed();
        if !out_json.is_null() {
            let text = serde_json::to_string(&report).map_err(|e| Fail::Status(RcStatus::Internal, e.to_string()))?;
            *out_json = to_c_string(text)?;
        }
        Ok(())
    })
}

fn boxed(poly: IntPoly, names: Vec<String>) -> *mut RcPoly {
    Box::into_raw(Box::new(RcPoly { poly, names }))
}

/// The factorization polynomial of cycle type `mu` in `p` and `q`.
///
/// # Safety
/// `mu` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_factorization(mu: *const c_char, out: *mut *mut RcPoly) -> RcStatus {
    guard(|| {
        check_out(out, "out")?;
        let poly = factorization_poly(&read_partition(mu, "mu")?, DEFAULT_ENUMERATION_CAP)?;
        *out = boxed(poly, rectangle_var_names(1));
        Ok(())
    })
}

/// `F_k` for `m` rectangles over `p_1..p_m, q_1..q_m`; `flip` applies
/// `(-1)^k` and `q_i -> -q_i`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_fk(m: usize, k: usize, flip_signs: bool, out: *mut *mut RcPoly) -> RcStatus {
    guard(|| {
        check_out(out, "out")?;
        let mut poly = f_k_polynomial(m, k)?;
        if flip_signs {
            poly = flip(&poly, m, k);
        }
        *out = boxed(poly, rectangle_var_names(m));
        Ok(())
    })
}

/// Leading terms (total degree `k + 1`) of `F_k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_gk(m: usize, k: usize, flip_signs: bool, out: *mut *mut RcPoly) -> RcStatus {
    guard(|| {
        check_out(out, "out")?;
        let mut poly = g_k_leading(m, k)?;
        if flip_signs {
            poly = flip(&poly, m, k);
        }
        *out = boxed(poly, rectangle_var_names(m));
        Ok(())
    })
}

/// `F_mu` for `m` rectangles, by interpolation (default size caps).
///
/// # Safety
/// `mu` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_f_mu(m: usize, mu: *const c_char, out: *mut *mut RcPoly) -> RcStatus {
    guard(|| {
        check_out(out, "out")?;
        let poly = f_mu_interpolate(m, &read_partition(mu, "mu")?)?;
        *out = boxed(poly, rectangle_var_names(m));
        Ok(())
    })
}

unsafe fn poly_ref<'a>(poly: *const RcPoly) -> Result<&'a RcPoly, Fail> {
    poly.as_ref().ok_or_else(|| Fail::Status(RcStatus::NullPointer, "poly is NULL".into()))
}

/// Number of variables of the polynomial.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_num_vars(poly: *const RcPoly, out: *mut usize) -> RcStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = poly_ref(poly)?.names.len();
        Ok(())
    })
}

/// Text form such as `-p^2*q + p*q^2`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_to_string(poly: *const RcPoly, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        check_out(out, "out")?;
        let p = poly_ref(poly)?;
        *out = to_c_string(p.poly.render(&p.names))?;
        Ok(())
    })
}

/// JSON document `{"variables": [...], "terms": [{"exp": [...], "coef": "..."}], "text": "..."}`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_to_json(poly: *const RcPoly, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        check_out(out, "out")?;
        let p = poly_ref(poly)?;
        let text = serde_json::to_string(&p.poly.to_document(&p.names))
            .map_err(|e| Fail::Status(RcStatus::Internal, e.to_string()))?;
        *out = to_c_string(text)?;
        Ok(())
    })
}

/// Evaluates at an integer point of length [`rc_poly_num_vars`].
///
/// # Safety
/// `poly` must be a live handle; `point` must hold `len` values;
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_eval(
    poly: *const RcPoly,
    point: *const i64,
    len: usize,
    out_value: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        check_out(out_value, "out_value")?;
        let p = poly_ref(poly)?;
        if len != p.names.len() {
            return Err(Fail::Status(
                RcStatus::InvalidArgument,
                format!("point has {len} coordinates, polynomial has {} variables", p.names.len()),
            ));
        }
        if point.is_null() && len > 0 {
            return Err(Fail::Status(RcStatus::NullPointer, "point is NULL".into()));
        }
        let coords = if len == 0 { &[][..] } else { std::slice::from_raw_parts(point, len) };
        *out_value = to_c_string(p.poly.eval(&coords.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).to_string())?;
        Ok(())
    })
}

/// Releases a polynomial handle. NULL is ignored.
///
/// # Safety
/// `poly` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rc_poly_free(poly: *mut RcPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}
