//! C ABI over the counting engine.
//!
//! Every function returns an [`FfraceStatus`]; on failure a message is kept per thread
//! and can be read with [`ffrace_last_error`]. Strings handed out by the library must be
//! released with [`ffrace_string_free`], contexts with [`ffrace_context_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ffrace::gl2::{certify_ties, stabilizer_search};
use ffrace::report::{Counter, Route};
use ffrace::sieve::sieve_count;
use ffrace::{Error, FieldSpec};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfraceStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NotAUnit = 4,
    Consistency = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    Panic = 8,
}

/// Opaque handle: a field, a modulus and everything cached about them.
pub struct FfraceContext {
    counter: Counter,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FfraceStatus {
    match e {
        Error::NotAUnit(_) => FfraceStatus::NotAUnit,
        Error::Consistency(_) => FfraceStatus::Consistency,
        _ => FfraceStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (FfraceStatus, String)>) -> FfraceStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FfraceStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside ffrace".into());
            FfraceStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (FfraceStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (FfraceStatus, String)> {
    if p.is_null() {
        return Err((FfraceStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (FfraceStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn ctx_arg<'a>(ctx: *const FfraceContext) -> Result<&'a FfraceContext, (FfraceStatus, String)> {
    ctx.as_ref().ok_or((FfraceStatus::NullPointer, "context is null".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (FfraceStatus, String)> {
    if out.is_null() {
        return Err((FfraceStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).map_err(|_| (FfraceStatus::InvalidArgument, "interior nul in output".into()))?.into_raw();
    Ok(())
}

unsafe fn put_counts(counts: &[u128], out: *mut u64, len: usize) -> Result<(), (FfraceStatus, String)> {
    if out.is_null() {
        return Err((FfraceStatus::NullPointer, "output buffer is null".into()));
    }
    if len < counts.len() {
        return Err((FfraceStatus::BufferTooSmall, format!("need {} slots, got {len}", counts.len())));
    }
    let dst = std::slice::from_raw_parts_mut(out, counts.len());
    for (d, &c) in dst.iter_mut().zip(counts) {
        *d = u64::try_from(c)
            .map_err(|_| (FfraceStatus::Overflow, format!("count {c} exceeds 64 bits; use ffrace_count_json")))?;
    }
    Ok(())
}

/// Builds a context for `field` (e.g. "F3") and `modulus` (e.g. "T^2+1").
///
/// # Safety
/// `field` and `modulus` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ffrace_context_new(
    field: *const c_char,
    modulus: *const c_char,
    out: *mut *mut FfraceContext,
) -> FfraceStatus {
    guard(|| {
        if out.is_null() {
            return Err((FfraceStatus::NullPointer, "output pointer is null".into()));
        }
        let field: FieldSpec = str_arg(field, "field")?.parse().map_err(lib_err)?;
        let counter = Counter::for_modulus(&field, str_arg(modulus, "modulus")?, Route::Auto).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(FfraceContext { counter }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must come from [`ffrace_context_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ffrace_context_free(ctx: *mut FfraceContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Number of residue classes, M'. Zero for a null context.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn ffrace_class_count(ctx: *const FfraceContext) -> usize {
    ctx.as_ref().map_or(0, |c| c.counter.group().order())
}

/// Polynomial literal of class `index`; free with [`ffrace_string_free`].
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffrace_class_label(ctx: *const FfraceContext, index: usize, out: *mut *mut c_char) -> FfraceStatus {
    guard(|| {
        let g = ctx_arg(ctx)?.counter.group();
        if index >= g.order() {
            return Err((FfraceStatus::InvalidArgument, format!("class index {index} out of range 0..{}", g.order())));
        }
        put_string(out, g.unit(index).to_string())
    })
}

/// Monic irreducible counts of degree `degree` by sieving, one per class.
///
/// # Safety
/// `ctx` must be a live context; `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn ffrace_count_sieve(ctx: *const FfraceContext, degree: u32, out: *mut u64, len: usize) -> FfraceStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let table = sieve_count(c.counter.group(), degree as usize).map_err(lib_err)?;
        put_counts(&table.counts, out, len)
    })
}

/// Monic irreducible counts of degree `degree` from the explicit formula.
///
/// # Safety
/// `ctx` must be a live context; `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn ffrace_count_explicit(
    ctx: *const FfraceContext,
    degree: u32,
    out: *mut u64,
    len: usize,
) -> FfraceStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let counts = c.counter.engine().map_err(lib_err)?.count(degree as usize).map_err(lib_err)?.counts;
        put_counts(&counts, out, len)
    })
}

/// Counts as JSON `{"N":..,"source":..,"counts":{"<class>":"<decimal>",...}}`, routed
/// to the sieve or the explicit formula by degree.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffrace_count_json(ctx: *const FfraceContext, degree: u32, out: *mut *mut c_char) -> FfraceStatus {
    guard(|| {
        let c = ctx_arg(ctx)?;
        let (counts, src) = c.counter.count(degree as usize).map_err(lib_err)?;
        let g = c.counter.group();
        let map: serde_json::Map<String, serde_json::Value> =
            g.units().iter().zip(&counts).map(|(p, n)| (p.to_string(), n.to_string().into())).collect();
        let v = serde_json::json!({ "N": degree, "source": src.as_str(), "counts": map });
        put_string(out, v.to_string())
    })
}

/// Tie certificates for every stabilizing matrix and every residue, as a JSON array.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ffrace_ties_json(ctx: *const FfraceContext, out: *mut *mut c_char) -> FfraceStatus {
    guard(|| {
        let g = ctx_arg(ctx)?.counter.group();
        let mut certs = Vec::new();
        for (b, lambda) in stabilizer_search(g.modulus()) {
            let period = certify_ties(g, &b, lambda, 0).map_err(lib_err)?.period;
            for e in 0..period {
                certs.push(certify_ties(g, &b, lambda, e).map_err(lib_err)?);
            }
        }
        let s = serde_json::to_string(&certs).map_err(|e| (FfraceStatus::InvalidArgument, e.to_string()))?;
        put_string(out, s)
    })
}

/// Message for the last failed call on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn ffrace_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ffrace_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
