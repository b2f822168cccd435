use std::ffi::{CStr, CString};
use std::ptr;

use lfun_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { lfun_string_free(s) };
    out
}

fn last_error() -> String {
    let e = lfun_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_owned()
}

#[test]
fn series_through_handles() {
    let job = CString::new("command = \"lfun\"\np = 2\n[variety]\nd = 2\n").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { lfun_module_from_job(job.as_ptr(), &mut m) }, LfunStatus::Ok);
    assert_eq!(unsafe { lfun_module_rank(m) }, 1);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lfun_l_euler(m, 3, 1 << 20, &mut s) }, LfunStatus::Ok);
    assert_eq!(unsafe { lfun_series_degree(s) }, 3);
    // Z(A^2/F_2) numerator: 1/(1 - 4t), so coefficients 4^k.
    for (k, want) in ["1", "4", "16", "64"].iter().enumerate() {
        let mut v = ptr::null_mut();
        let mut e = -1;
        let mut prec = 0;
        assert_eq!(unsafe { lfun_series_coefficient(s, k, &mut v, &mut e, &mut prec) }, LfunStatus::Ok);
        assert_eq!(take(v), *want);
        assert_eq!(e, 0);
        assert!(prec > 0);
    }
    assert_eq!(unsafe { lfun_series_coefficient(s, 9, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) }, LfunStatus::InvalidInput);
    assert!(last_error().contains("beyond"));
    unsafe {
        lfun_series_free(s);
        lfun_module_free(m);
    }
}

#[test]
fn errors_and_null_handling() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lfun_job_run(ptr::null(), &mut out) }, LfunStatus::NullPointer);
    let bad = CString::new("command = \"lfun\"\np = 9\n").unwrap();
    assert_eq!(unsafe { lfun_job_run(bad.as_ptr(), &mut out) }, LfunStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().contains("prime"));
    let heavy = CString::new("command = \"lfun\"\np = 2\nD = 30\nbudget = 10\n").unwrap();
    assert_eq!(unsafe { lfun_job_run(heavy.as_ptr(), &mut out) }, LfunStatus::ResourceLimit);
    assert!(take(out).contains("\"status\":\"error\""));
    assert_eq!(unsafe { lfun_legendre_unit_root(5, 1, 2, 3, &mut out) }, LfunStatus::Ok);
    take(out);
    // λ = -1 over F_7 is supersingular: no unit root.
    assert_ne!(unsafe { lfun_legendre_unit_root(7, 1, 6, 3, &mut out) }, LfunStatus::Ok);
    assert!(out.is_null());
    unsafe {
        lfun_module_free(ptr::null_mut());
        lfun_series_free(ptr::null_mut());
        lfun_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { lfun_module_rank(ptr::null()) }, 0);
}

#[test]
fn job_document() {
    let job = CString::new("command = \"lfun\"\np = 2\nD = 3\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lfun_job_run(job.as_ptr(), &mut out) }, LfunStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["result"]["l"]["coefficients"][3]["value"], "8");
}
