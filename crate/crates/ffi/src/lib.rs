//! C ABI over `discrete_farkas`.
//!
//! Instances and decisions are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a [`DfkStatus`]; on failure
//! [`dfk_last_error`] describes the most recent error on the calling thread.
//! Strings handed out by the library are released with [`dfk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use discrete_farkas::lp_build::degree_bound_formula;
use discrete_farkas::{
    certificate, check, check_general, count_series, dims, Assembly, Certificate, Decision, Error,
    Instance, Mode, Verdict,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInstance = 2,
    NegativeEntries = 3,
    Noncompact = 4,
    TooLarge = 5,
    Parse = 6,
    BufferTooSmall = 7,
    NotAvailable = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfkVerdict {
    Feasible = 0,
    Infeasible = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfkAssembly {
    Pruned = 0,
    Full = 1,
}

/// An integer system `Ax = b`.
pub struct DfkInstance {
    inner: Instance,
}

/// Outcome of [`dfk_check`]. Keeps the instance the certificate refers to.
pub struct DfkDecision {
    decision: Decision,
    certified: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("NULs removed")));
}

fn status_of(e: &Error) -> DfkStatus {
    match e {
        Error::InvalidInstance(_) => DfkStatus::InvalidInstance,
        Error::NegativeEntries => DfkStatus::NegativeEntries,
        Error::NoncompactColumn { .. } | Error::NoncompactInstance => DfkStatus::Noncompact,
        Error::TooLarge(_) => DfkStatus::TooLarge,
        Error::Parse(_) | Error::Json(_) => DfkStatus::Parse,
        _ => DfkStatus::Internal,
    }
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), (DfkStatus, String)>) -> DfkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DfkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            set_error(msg);
            DfkStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (DfkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (DfkStatus, String) {
    (DfkStatus::NullPointer, "null pointer argument".into())
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, (DfkStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DfkStatus::Parse, "string is not valid UTF-8".into()))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dfk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dfk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dfk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance from JSON text (`{"A": ..., "b": ..., "mode"?: ...}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dfk_instance_from_json(json: *const c_char, out: *mut *mut DfkInstance) -> DfkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inner = Instance::from_json_str(c_str(json)?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DfkInstance { inner }));
        Ok(())
    })
}

/// Builds an instance from a row-major `m x n` matrix and a length-`m` rhs.
/// The mode is inferred from the signs of the entries.
///
/// # Safety
/// `a` must point to `m * n` values, `b` to `m` values, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dfk_instance_new(
    m: usize,
    n: usize,
    a: *const i64,
    b: *const i64,
    out: *mut *mut DfkInstance,
) -> DfkStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return Err(null());
        }
        let len = m
            .checked_mul(n)
            .ok_or((DfkStatus::InvalidInstance, "m * n overflows".to_string()))?;
        let a = std::slice::from_raw_parts(a, len);
        let b = std::slice::from_raw_parts(b, m);
        let rows: Vec<&[i64]> = if n == 0 { vec![&[][..]; m] } else { a.chunks(n).collect() };
        let inner = Instance::from_i64(&rows, b).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DfkInstance { inner }));
        Ok(())
    })
}

/// # Safety
/// `inst` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dfk_instance_free(inst: *mut DfkInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of rows of `A`, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live instance.
#[no_mangle]
pub unsafe extern "C" fn dfk_instance_rows(inst: *const DfkInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.m())
}

/// Number of columns of `A`, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live instance.
#[no_mangle]
pub unsafe extern "C" fn dfk_instance_cols(inst: *const DfkInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.n())
}

/// Decides `Ax = b` over nonnegative integers. With `general` false a
/// negative entry fails with `NEGATIVE_ENTRIES`; with it true the instance is
/// decided through its nonnegative lift.
///
/// # Safety
/// `inst` must be a live instance and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dfk_check(
    inst: *const DfkInstance,
    assembly: DfkAssembly,
    general: bool,
    out: *mut *mut DfkDecision,
) -> DfkStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let assembly = match assembly {
            DfkAssembly::Pruned => Assembly::Pruned,
            DfkAssembly::Full => Assembly::Full,
        };
        let inst = inst.inner.clone();
        let (decision, certified) = if general {
            let inst = inst.with_mode(Mode::General).map_err(lib_err)?;
            let d = check_general(&inst, assembly).map_err(lib_err)?;
            let certified = d.lift.as_ref().map_or(inst, |l| l.lifted.clone());
            (d, certified)
        } else {
            if inst.has_negative_entries() {
                return Err(lib_err(Error::NegativeEntries));
            }
            let inst = inst.with_mode(Mode::NonnegOnly).map_err(lib_err)?;
            (check(&inst, assembly).map_err(lib_err)?, inst)
        };
        *out = Box::into_raw(Box::new(DfkDecision { decision, certified }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from [`dfk_check`] and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dfk_decision_free(d: *mut DfkDecision) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live decision and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dfk_decision_verdict(d: *const DfkDecision, out: *mut DfkVerdict) -> DfkStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(null)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = match d.decision.verdict {
            Verdict::Feasible => DfkVerdict::Feasible,
            Verdict::Infeasible => DfkVerdict::Infeasible,
        };
        Ok(())
    })
}

/// Copies the witness `x` into `buf` (capacity `len`) and stores its length
/// in `written`. Fails with `NOT_AVAILABLE` for infeasible decisions and
/// `BUFFER_TOO_SMALL` (with `written` set) when `len` is short.
///
/// # Safety
/// `d` must be a live decision, `buf` must hold `len` values, `written` valid.
#[no_mangle]
pub unsafe extern "C" fn dfk_decision_witness(
    d: *const DfkDecision,
    buf: *mut u64,
    len: usize,
    written: *mut usize,
) -> DfkStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(null)?;
        let written = written.as_mut().ok_or_else(null)?;
        let x = d
            .decision
            .witness
            .as_ref()
            .ok_or((DfkStatus::NotAvailable, "no witness: instance is infeasible".to_string()))?;
        *written = x.len();
        if len < x.len() {
            return Err((DfkStatus::BufferTooSmall, format!("witness needs {} entries", x.len())));
        }
        if buf.is_null() {
            return Err(null());
        }
        std::slice::from_raw_parts_mut(buf, x.len()).copy_from_slice(x);
        Ok(())
    })
}

/// Certificate of a feasible decision as JSON, released with
/// [`dfk_string_free`]. For general instances it refers to the lifted system.
///
/// # Safety
/// `d` must be a live decision and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dfk_decision_certificate_json(d: *const DfkDecision, out: *mut *mut c_char) -> DfkStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let cert = d
            .decision
            .certificate
            .as_ref()
            .ok_or((DfkStatus::NotAvailable, "no certificate: instance is infeasible".to_string()))?;
        *out = to_c_string(cert.to_json().to_string());
        Ok(())
    })
}

/// The instance the decision's certificate refers to, as a new handle.
///
/// # Safety
/// `d` must be a live decision and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dfk_decision_certified_instance(
    d: *const DfkDecision,
    out: *mut *mut DfkInstance,
) -> DfkStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = Box::into_raw(Box::new(DfkInstance { inner: d.certified.clone() }));
        Ok(())
    })
}

/// Checks a certificate JSON against a nonnegative instance; `valid` is set
/// to whether the polynomial identity holds exactly.
///
/// # Safety
/// `inst` must be a live instance, `cert_json` NUL-terminated, `valid` valid.
#[no_mangle]
pub unsafe extern "C" fn dfk_verify_certificate(
    inst: *const DfkInstance,
    cert_json: *const c_char,
    valid: *mut bool,
) -> DfkStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(null)?;
        let valid = valid.as_mut().ok_or_else(null)?;
        let text = c_str(cert_json)?;
        let cert = Certificate::from_json_str(text).map_err(lib_err)?;
        *valid = certificate::verify(&inst.inner, &cert).is_valid();
        Ok(())
    })
}

/// Exact number of nonnegative solutions as a decimal string, released with
/// [`dfk_string_free`]. Requires nonnegative data without zero columns.
///
/// # Safety
/// `inst` must be a live instance and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dfk_count(inst: *const DfkInstance, out: *mut *mut c_char) -> DfkStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let count = count_series(&inst.inner).map_err(lib_err)?;
        *out = to_c_string(count.to_string());
        Ok(())
    })
}

/// Full-assembly LP size and degree bound of a nonnegative instance. The
/// sizes are 0 when no LP is needed (`b = 0` or a negative degree bound).
///
/// # Safety
/// `inst` must be a live instance; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dfk_dims(
    inst: *const DfkInstance,
    vars: *mut u64,
    rows: *mut u64,
    degree_bound: *mut i64,
) -> DfkStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(null)?;
        let (vars, rows, degree_bound) = match (vars.as_mut(), rows.as_mut(), degree_bound.as_mut()) {
            (Some(v), Some(r), Some(b)) => (v, r, b),
            _ => return Err(null()),
        };
        let too_large = |what: &str| (DfkStatus::TooLarge, format!("{what} does not fit in 64 bits"));
        let bound = degree_bound_formula(&inst.inner);
        *degree_bound = bound.to_string().parse().map_err(|_| too_large("degree bound"))?;
        match dims(&inst.inner).map_err(lib_err)? {
            Some(d) => {
                *vars = d.num_vars.to_string().parse().map_err(|_| too_large("variable count"))?;
                *rows = d.num_rows.to_string().parse().map_err(|_| too_large("row count"))?;
            }
            None => {
                *vars = 0;
                *rows = 0;
            }
        }
        Ok(())
    })
}
