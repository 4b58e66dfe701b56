//! C ABI over the `mckay` library.
//!
//! Groups are opaque handles created by [`mckay_group_new`] and released by
//! [`mckay_group_free`]. Every fallible call returns a [`McKayStatus`]; on
//! failure [`mckay_last_error`] describes the problem for the calling thread.
//! Strings handed out by this library must be released with
//! [`mckay_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mckay::{
    enumerate_strata, fiber_decomposition, freudenthal, reconstruct_g_dim, DimVector, Error,
    GroupSpec, McKayData, StratumLabel,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McKayStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownSpec = 3,
    OutOfScope = 4,
    BufferTooSmall = 5,
    Internal = 6,
    Panic = 7,
}

/// Opaque handle to a group with its character table and McKay quiver.
pub struct McKayGroup {
    data: McKayData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> McKayStatus {
    match e {
        Error::UnknownSpec(_) => McKayStatus::UnknownSpec,
        Error::OutOfScope(_) => McKayStatus::OutOfScope,
        Error::InvalidArgument(_) | Error::Parse(_) | Error::FramingMismatch(..) => {
            McKayStatus::InvalidArgument
        }
        _ => McKayStatus::Internal,
    }
}

struct Failure(McKayStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> McKayStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McKayStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside mckay".into());
            McKayStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(McKayStatus::NullPointer, "null pointer argument".into())
}

unsafe fn group<'a>(g: *const McKayGroup) -> Result<&'a McKayData, Failure> {
    g.as_ref().map(|g| &g.data).ok_or_else(null)
}

unsafe fn slice<'a>(p: *const i64, len: usize) -> Result<&'a [i64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|e| Failure(McKayStatus::Internal, e.to_string()))?;
    write_out(out, s.into_raw())
}

unsafe fn write_buffer(buf: *mut i64, len: usize, values: &[i64]) -> Result<(), Failure> {
    if len < values.len() {
        return Err(Failure(
            McKayStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    if buf.is_null() {
        return Err(null());
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

/// Message for the last failure on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn mckay_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Build a group from a spec string such as `"binary-icosahedral"` or `"cyclic:5"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_group_new(spec: *const c_char, out: *mut *mut McKayGroup) -> McKayStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return Err(null());
        }
        let spec = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| Failure(McKayStatus::InvalidArgument, "spec is not UTF-8".into()))?;
        let spec: GroupSpec = spec.parse()?;
        let data = McKayData::compute(spec)?;
        write_out(out, Box::into_raw(Box::new(McKayGroup { data })))
    })
}

/// # Safety
/// `g` must come from [`mckay_group_new`] and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mckay_group_free(g: *mut McKayGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mckay_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_group_order(g: *const McKayGroup, out: *mut usize) -> McKayStatus {
    guard(|| write_out(out, group(g)?.group.order()))
}

/// Number of irreducible representations, i.e. quiver vertices.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_quiver_size(g: *const McKayGroup, out: *mut usize) -> McKayStatus {
    guard(|| write_out(out, group(g)?.cartan.vertex_count))
}

/// Row-major adjacency matrix; `buf` must hold `size * size` values.
///
/// # Safety
/// `g` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mckay_quiver_adjacency(g: *const McKayGroup, buf: *mut i64, len: usize) -> McKayStatus {
    guard(|| {
        let flat: Vec<i64> = group(g)?.cartan.adjacency.concat();
        write_buffer(buf, len, &flat)
    })
}

/// Irrep degrees, which form the imaginary root `δ`.
///
/// # Safety
/// `g` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mckay_quiver_delta(g: *const McKayGroup, buf: *mut i64, len: usize) -> McKayStatus {
    guard(|| write_buffer(buf, len, &group(g)?.cartan.delta))
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_dim_g(g: *const McKayGroup, out: *mut usize) -> McKayStatus {
    guard(|| write_out(out, reconstruct_g_dim(&group(g)?.cartan)?))
}

/// Affine type name, e.g. `"E~8"`. Free with [`mckay_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_ade_type(g: *const McKayGroup, out: *mut *mut c_char) -> McKayStatus {
    guard(|| write_string(out, group(g)?.cartan.ade_type.to_string()))
}

/// Character table as JSON. Free with [`mckay_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_chartab_json(g: *const McKayGroup, out: *mut *mut c_char) -> McKayStatus {
    guard(|| write_string(out, mckay::cli::to_json(&group(g)?.table)?))
}

/// Cartan data as JSON. Free with [`mckay_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_quiver_json(g: *const McKayGroup, out: *mut *mut c_char) -> McKayStatus {
    guard(|| write_string(out, mckay::cli::to_json(&group(g)?.cartan)?))
}

/// Weight multiplicities of `L(w)` up to height `depth`, as JSON.
///
/// # Safety
/// `g` must be a live handle, `w` valid for `w_len` reads, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_multiplicities_json(
    g: *const McKayGroup,
    w: *const i64,
    w_len: usize,
    depth: usize,
    out: *mut *mut c_char,
) -> McKayStatus {
    guard(|| {
        let table = freudenthal(slice(w, w_len)?, &group(g)?.cartan, depth)?;
        write_string(out, mckay::cli::to_json(&table)?)
    })
}

/// Stratum labels for `n` points with framing `w`, as JSON.
///
/// # Safety
/// `g` must be a live handle, `w` valid for `w_len` reads, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_strata_json(
    g: *const McKayGroup,
    n: u64,
    w: *const i64,
    w_len: usize,
    out: *mut *mut c_char,
) -> McKayStatus {
    guard(|| {
        let labels = enumerate_strata(n, slice(w, w_len)?, &group(g)?.cartan)?;
        write_string(out, mckay::cli::to_json(&labels)?)
    })
}

/// Fiber decomposition of `M(v, w)` over the stratum `(v0, lam)`, as JSON.
/// `v`, `w` and `v0` all have `len` entries.
///
/// # Safety
/// `g` must be a live handle, the arrays valid for the stated lengths, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_fiber_json(
    g: *const McKayGroup,
    v: *const i64,
    w: *const i64,
    v0: *const i64,
    len: usize,
    lam: *const u64,
    lam_len: usize,
    out: *mut *mut c_char,
) -> McKayStatus {
    guard(|| {
        let cd = &group(g)?.cartan;
        let v = DimVector::new(slice(v, len)?.to_vec())?;
        let w = slice(w, len)?;
        let v0 = DimVector::new(slice(v0, len)?.to_vec())?;
        let lam = if lam_len == 0 {
            Vec::new()
        } else if lam.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(lam, lam_len).to_vec()
        };
        let label = StratumLabel { candidate: v0.height() > 0, v0, lam, residual: 0 };
        let fiber = fiber_decomposition(&v, w, &label, cd)?;
        write_string(out, mckay::cli::to_json(&fiber)?)
    })
}
