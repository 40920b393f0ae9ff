use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ffrace_ffi::*;

fn context(field: &str, modulus: &str) -> *mut FfraceContext {
    let (f, m) = (CString::new(field).unwrap(), CString::new(modulus).unwrap());
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { ffrace_context_new(f.as_ptr(), m.as_ptr(), &mut ctx) }, FfraceStatus::Ok);
    assert!(!ctx.is_null());
    ctx
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { ffrace_string_free(p) };
    s
}

fn last_error() -> String {
    let p = ffrace_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn counts_match_both_routes() {
    let ctx = context("F2", "T^3+T+1");
    let n = unsafe { ffrace_class_count(ctx) };
    assert_eq!(n, 7);
    let mut a = vec![0u64; n];
    let mut b = vec![0u64; n];
    unsafe {
        assert_eq!(ffrace_count_sieve(ctx, 14, a.as_mut_ptr(), n), FfraceStatus::Ok);
        assert_eq!(ffrace_count_explicit(ctx, 14, b.as_mut_ptr(), n), FfraceStatus::Ok);
    }
    assert_eq!(a, b);
    assert_eq!(a.iter().sum::<u64>(), 1161);
    let labels: Vec<String> = (0..n)
        .map(|i| {
            let mut p = ptr::null_mut();
            assert_eq!(unsafe { ffrace_class_label(ctx, i, &mut p) }, FfraceStatus::Ok);
            take_string(p)
        })
        .collect();
    let t = labels.iter().position(|l| l == "T").unwrap();
    assert_eq!(a[t], 162);
    unsafe { ffrace_context_free(ctx) };
}

#[test]
fn json_outputs() {
    let ctx = context("F3", "T^2+1");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ffrace_count_json(ctx, 20, &mut p) }, FfraceStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(p)).unwrap();
    assert_eq!(v["source"], "explicit");
    assert_eq!(v["counts"]["2"], "21793092");

    assert_eq!(unsafe { ffrace_ties_json(ctx, &mut p) }, FfraceStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(p)).unwrap();
    assert!(v.as_array().unwrap().iter().any(|c| c["matrix"] == serde_json::json!([[1, 0], [0, 2]]) && c["e"] == 1));
    unsafe { ffrace_context_free(ctx) };
}

#[test]
fn errors_are_reported() {
    let mut ctx = ptr::null_mut();
    let f = CString::new("F6").unwrap();
    let m = CString::new("T").unwrap();
    assert_eq!(unsafe { ffrace_context_new(f.as_ptr(), m.as_ptr(), &mut ctx) }, FfraceStatus::InvalidArgument);
    assert!(ctx.is_null());
    assert!(last_error().contains('6'));
    assert_eq!(unsafe { ffrace_context_new(ptr::null(), m.as_ptr(), &mut ctx) }, FfraceStatus::NullPointer);

    let ctx = context("F2", "T^2+T+1");
    let mut small = [0u64; 2];
    assert_eq!(unsafe { ffrace_count_sieve(ctx, 5, small.as_mut_ptr(), 2) }, FfraceStatus::BufferTooSmall);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ffrace_class_label(ctx, 3, &mut p) }, FfraceStatus::InvalidArgument);
    assert!(last_error().contains("out of range"));
    assert_eq!(unsafe { ffrace_class_count(ptr::null()) }, 0);
    unsafe {
        ffrace_context_free(ctx);
        ffrace_context_free(ptr::null_mut());
        ffrace_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ffrace.h")).unwrap();
    for f in [
        "ffrace_context_new",
        "ffrace_context_free",
        "ffrace_class_count",
        "ffrace_class_label",
        "ffrace_count_sieve",
        "ffrace_count_explicit",
        "ffrace_count_json",
        "ffrace_ties_json",
        "ffrace_last_error",
        "ffrace_string_free",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct FfraceContext FfraceContext;"));
    assert!(h.contains("FFRACE_STATUS_CONSISTENCY = 5"));
}
