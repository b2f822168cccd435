//! C ABI over `lfun-core`. Objects cross the boundary as opaque handles
//! that the caller releases with the matching `*_free`. Every fallible call
//! returns an [`LfunStatus`]; on failure `lfun_last_error` describes it.
//! Strings handed out are owned by the caller and go back through
//! `lfun_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lfun_core::fmodule::FModule;
use lfun_core::job::{self, JobSpec};
use lfun_core::lseries::{self, LSeries};
use lfun_core::padic::ZqElement;
use lfun_core::{legendre, Error};

/// Status codes, numbered like the `lfun` exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfunStatus {
    Ok = 0,
    /// Malformed input: bad TOML, non-prime p, unsupported base, ...
    InvalidInput = 1,
    /// A check did not hold, or a mathematical error such as a non-unit pivot.
    Failed = 2,
    /// Budget, precision or size limit reached.
    ResourceLimit = 3,
    NullPointer = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// An F-module.
pub struct LfunModule(FModule);

/// A truncated L-series.
pub struct LfunSeries(LSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> LfunStatus {
    let status = match job::exit_code(&e) {
        1 => LfunStatus::InvalidInput,
        3 => LfunStatus::ResourceLimit,
        _ => LfunStatus::Failed,
    };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> LfunStatus) -> LfunStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            LfunStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LfunStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(LfunStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|e| {
        set_error(format!("argument is not UTF-8: {e}"));
        LfunStatus::InvalidInput
    })
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn digits(x: &ZqElement) -> String {
    x.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

macro_rules! nonnull {
    ($($p:ident),*) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)).into());
            return LfunStatus::NullPointer;
        })*
    };
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn lfun_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lfun_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a TOML job and stores the JSON result document in `*out`, even
/// when the job itself fails (the document then carries the error). The
/// status mirrors the `lfun` exit code.
///
/// # Safety
/// `toml` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lfun_job_run(toml: *const c_char, out: *mut *mut c_char) -> LfunStatus {
    guard(|| {
        nonnull!(out);
        *out = ptr::null_mut();
        let src = match read_str(toml) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let spec = match JobSpec::parse(src) {
            Ok(j) => j,
            Err(e) => {
                set_error(format!("malformed job: {e}"));
                return LfunStatus::InvalidInput;
            }
        };
        let res = job::run(&spec);
        let text = serde_json::to_string(&res.document).expect("json values serialize");
        *out = give_string(text);
        match res.exit_code {
            0 => LfunStatus::Ok,
            code => {
                let msg = res.document.get("error").and_then(|e| e.as_str()).unwrap_or("a check did not hold");
                set_error(msg.to_string());
                match code {
                    1 => LfunStatus::InvalidInput,
                    3 => LfunStatus::ResourceLimit,
                    _ => LfunStatus::Failed,
                }
            }
        }
    })
}

/// Builds the module described by the `[variety]` and `[module]` tables
/// of a job (the `command` field is still required).
///
/// # Safety
/// `toml` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lfun_module_from_job(toml: *const c_char, out: *mut *mut LfunModule) -> LfunStatus {
    guard(|| {
        nonnull!(out);
        *out = ptr::null_mut();
        let src = match read_str(toml) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let spec = match JobSpec::parse(src) {
            Ok(j) => j,
            Err(e) => {
                set_error(format!("malformed job: {e}"));
                return LfunStatus::InvalidInput;
            }
        };
        match job::module(&spec) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(LfunModule(m)));
                LfunStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Rank of the module, or 0 for NULL.
///
/// # Safety
/// `m` is NULL or a live module handle.
#[no_mangle]
pub unsafe extern "C" fn lfun_module_rank(m: *const LfunModule) -> usize {
    m.as_ref().map_or(0, |m| m.0.rank())
}

/// # Safety
/// `m` is NULL or a live module handle, which this call invalidates.
#[no_mangle]
pub unsafe extern "C" fn lfun_module_free(m: *mut LfunModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

unsafe fn series_with(
    m: *const LfunModule,
    degree: usize,
    budget: u64,
    out: *mut *mut LfunSeries,
    f: fn(&FModule, usize, u128) -> lfun_core::Result<LSeries>,
) -> LfunStatus {
    guard(|| {
        nonnull!(m, out);
        *out = ptr::null_mut();
        match f(&(*m).0, degree, budget as u128) {
            Ok(l) => {
                *out = Box::into_raw(Box::new(LfunSeries(l)));
                LfunStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// L-series of the module through `t^degree`, from the Euler product.
///
/// # Safety
/// `m` is a live module handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lfun_l_euler(
    m: *const LfunModule,
    degree: usize,
    budget: u64,
    out: *mut *mut LfunSeries,
) -> LfunStatus {
    series_with(m, degree, budget, out, lseries::l_euler)
}

/// Same series, computed from fiber power sums.
///
/// # Safety
/// `m` is a live module handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lfun_l_expsum(
    m: *const LfunModule,
    degree: usize,
    budget: u64,
    out: *mut *mut LfunSeries,
) -> LfunStatus {
    series_with(m, degree, budget, out, lseries::l_expsum)
}

/// Truncation degree of the series, or 0 for NULL.
///
/// # Safety
/// `s` is NULL or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn lfun_series_degree(s: *const LfunSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.degree())
}

/// Coefficient of `t^k`, as `p^exponent * value`. `value` is written as
/// decimal digits; over a ramified ring its coordinates in powers of the
/// uniformizer are separated by spaces. `prec` gets the absolute precision
/// of `value` in uniformizer units. Any of the output pointers may be NULL.
///
/// # Safety
/// `s` is a live series handle; non-NULL outputs are writable.
#[no_mangle]
pub unsafe extern "C" fn lfun_series_coefficient(
    s: *const LfunSeries,
    k: usize,
    value: *mut *mut c_char,
    exponent: *mut i64,
    prec: *mut u32,
) -> LfunStatus {
    guard(|| {
        nonnull!(s);
        let l = &(*s).0;
        if k > l.degree() {
            set_error(format!("index {k} beyond degree {}", l.degree()));
            return LfunStatus::InvalidInput;
        }
        match l.coefficient(k) {
            Ok(c) => {
                if !value.is_null() {
                    *value = give_string(digits(&c.value));
                }
                if !exponent.is_null() {
                    *exponent = c.exponent;
                }
                if !prec.is_null() {
                    *prec = c.value.prec();
                }
                LfunStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` is NULL or a live series handle, which this call invalidates.
#[no_mangle]
pub unsafe extern "C" fn lfun_series_free(s: *mut LfunSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Unit root of Frobenius on the Legendre curve `y^2 = x(x-1)(x-λ)` over
/// `F_{p^r}`, to precision `p^n`, through Dwork's congruence formula. `λ` is
/// a field element index (its base-p digits are the coordinates).
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lfun_legendre_unit_root(
    p: u64,
    r: u32,
    lambda: u32,
    n: u32,
    out: *mut *mut c_char,
) -> LfunStatus {
    guard(|| {
        nonnull!(out);
        *out = ptr::null_mut();
        match legendre::unit_root_dwork(p, r, lambda, n) {
            Ok(u) => {
                *out = give_string(digits(&u));
                LfunStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
