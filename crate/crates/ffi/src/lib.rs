//! C ABI for syzygy-forge.
//!
//! Modules live behind an opaque `SfModule` handle. Every call returns an
//! `SfStatus`; on failure `sf_last_error()` holds the message for the
//! calling thread. Arrays are written into caller buffers: pass the
//! capacity, receive the needed length, and retry when it was too small.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use syzygy_forge::algebra::{DenseMatrix, PrimeField};
use syzygy_forge::buchsbaum::{classify, pfaffian4, SkewForm};
use syzygy_forge::bundles::named_example;
use syzygy_forge::cohomology::sheaf_cohomology_table;
use syzygy_forge::graded::{parse_presentation, PresentedModule};
use syzygy_forge::multiproj::kunneth_line_cohomology;
use syzygy_forge::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidModulus = 4,
    BoundTooSmall = 5,
    PreconditionViolated = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque module handle.
pub struct SfModule {
    inner: PresentedModule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SfStatus {
    match e {
        Error::Parse { .. } => SfStatus::ParseError,
        Error::InvalidModulus(_) => SfStatus::InvalidModulus,
        Error::BoundTooSmall(_) => SfStatus::BoundTooSmall,
        _ => SfStatus::PreconditionViolated,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SfStatus>) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            SfStatus::Panic
        }
    }
}

fn lift<T>(r: syzygy_forge::Result<T>) -> Result<T, SfStatus> {
    r.map_err(|e| {
        set_error(format!("{}: {e}", e.code()));
        status_of(&e)
    })
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, SfStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(SfStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        SfStatus::InvalidUtf8
    })
}

unsafe fn module_arg<'a>(m: *const SfModule) -> Result<&'a PresentedModule, SfStatus> {
    if m.is_null() {
        set_error("null module handle".into());
        return Err(SfStatus::NullPointer);
    }
    Ok(&(*m).inner)
}

unsafe fn write_out<T: Copy>(data: &[T], out: *mut T, cap: usize, out_len: *mut usize) -> Result<(), SfStatus> {
    if out_len.is_null() {
        set_error("null length pointer".into());
        return Err(SfStatus::NullPointer);
    }
    *out_len = data.len();
    if data.len() > cap {
        set_error(format!("buffer holds {cap}, need {}", data.len()));
        return Err(SfStatus::BufferTooSmall);
    }
    if !data.is_empty() {
        if out.is_null() {
            set_error("null output buffer".into());
            return Err(SfStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(data.as_ptr(), out, data.len());
    }
    Ok(())
}

unsafe fn put_handle(m: PresentedModule, out: *mut *mut SfModule) -> Result<(), SfStatus> {
    if out.is_null() {
        set_error("null output handle".into());
        return Err(SfStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(SfModule { inner: m }));
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_module_from_json(json: *const c_char, out: *mut *mut SfModule) -> SfStatus {
    guard(|| {
        let text = str_arg(json)?;
        let m = lift(parse_presentation(text))?;
        put_handle(m, out)
    })
}

/// Built-in examples: F1, F2, rank5, nc3, buchs, curve3, curve4, omega:p:l,
/// line:a,b,...
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_module_from_example(id: *const c_char, p: u64, out: *mut *mut SfModule) -> SfStatus {
    guard(|| {
        let id = str_arg(id)?;
        let field = lift(PrimeField::new(p))?;
        let m = lift(named_example(id, field))?;
        put_handle(m, out)
    })
}

/// # Safety
/// `m` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sf_module_free(m: *mut SfModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of variables minus one.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_module_n(m: *const SfModule, out: *mut usize) -> SfStatus {
    guard(|| {
        let m = module_arg(m)?;
        write_out(&[m.ring().n], out, 1, &mut 0)
    })
}

/// Ranks of the minimal free resolution F_0, F_1, ...
///
/// # Safety
/// `out` must hold `cap` entries; `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_betti_totals(
    m: *const SfModule,
    out: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> SfStatus {
    guard(|| {
        let m = module_arg(m)?;
        let res = lift(m.resolution())?;
        write_out(&res.betti().totals(), out, cap, out_len)
    })
}

/// h^i(M~(d)) for i = 0..n, d = lo..hi, row-major by i.
///
/// # Safety
/// `out` must hold `cap` entries; `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_sheaf_cohomology(
    m: *const SfModule,
    lo: i32,
    hi: i32,
    out: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> SfStatus {
    guard(|| {
        let m = module_arg(m)?;
        if lo > hi {
            set_error("window needs lo <= hi".into());
            return Err(SfStatus::PreconditionViolated);
        }
        let t = lift(sheaf_cohomology_table(m, lo, hi))?;
        let flat: Vec<i64> = t.h.concat();
        write_out(&flat, out, cap, out_len)
    })
}

/// Classification result as JSON; free the string with `sf_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_classify_json(m: *const SfModule, seed: u64, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let m = module_arg(m)?;
        if out.is_null() {
            set_error("null output pointer".into());
            return Err(SfStatus::NullPointer);
        }
        let r = lift(classify(m, seed))?;
        let s = serde_json::to_string(&r).expect("serializable");
        *out = CString::new(s).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Pfaffian of a 4x4 skew matrix (row-major), as a symmetric residue mod p.
///
/// # Safety
/// `entries` must hold 16 values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_pfaffian4(entries: *const i64, p: u64, out: *mut i64) -> SfStatus {
    guard(|| {
        if entries.is_null() || out.is_null() {
            set_error("null pointer".into());
            return Err(SfStatus::NullPointer);
        }
        let field = lift(PrimeField::new(p))?;
        let e = std::slice::from_raw_parts(entries, 16);
        let rows: Vec<Vec<i64>> = e.chunks(4).map(|r| r.to_vec()).collect();
        let a = SkewForm::new(DenseMatrix::from_i64(field, &rows));
        if !a.is_skew() {
            set_error("matrix is not skew-symmetric".into());
            return Err(SfStatus::PreconditionViolated);
        }
        *out = field.to_symmetric(pfaffian4(&a));
        Ok(())
    })
}

/// h^i(P^m x P^n, O(a, b)) for i = 0..m+n.
///
/// # Safety
/// `out` must hold `cap` entries; `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_kunneth(
    m: usize,
    n: usize,
    a: i64,
    b: i64,
    out: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> SfStatus {
    guard(|| write_out(&kunneth_line_cohomology(m, n, a, b), out, cap, out_len))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(id: &str) -> *mut SfModule {
        let id = CString::new(id).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { sf_module_from_example(id.as_ptr(), 32003, &mut h) }, SfStatus::Ok);
        h
    }

    #[test]
    fn betti_of_null_correlation() {
        let h = example("nc3");
        let mut buf = [0usize; 2];
        let mut len = 0;
        let s = unsafe { sf_betti_totals(h, buf.as_mut_ptr(), 2, &mut len) };
        assert_eq!(s, SfStatus::BufferTooSmall);
        assert_eq!(len, 3);
        let mut buf = [0usize; 3];
        assert_eq!(unsafe { sf_betti_totals(h, buf.as_mut_ptr(), 3, &mut len) }, SfStatus::Ok);
        assert_eq!(buf, [5, 4, 1]);
        unsafe { sf_module_free(h) };
    }

    #[test]
    fn cohomology_table_layout() {
        let h = example("nc3");
        let mut buf = vec![0i64; 64];
        let mut len = 0;
        assert_eq!(unsafe { sf_sheaf_cohomology(h, -3, -1, buf.as_mut_ptr(), 64, &mut len) }, SfStatus::Ok);
        assert_eq!(len, 12);
        // rows i = 0..3 over d = -3, -2, -1
        assert_eq!(&buf[3..6], &[0, 0, 1]);
        assert_eq!(&buf[6..9], &[1, 0, 0]);
        unsafe { sf_module_free(h) };
    }

    #[test]
    fn classify_round_trip() {
        let h = example("F1");
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { sf_classify_json(h, 7, &mut s) }, SfStatus::Ok);
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
        unsafe { sf_string_free(s) };
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verdict"], "PseudoBuchsbaum");
        assert_eq!(v["seed"], 7);
        unsafe { sf_module_free(h) };
    }

    #[test]
    fn errors_carry_messages() {
        let bad = CString::new("{\"p\": 4}").unwrap();
        let mut h = ptr::null_mut();
        let s = unsafe { sf_module_from_json(bad.as_ptr(), &mut h) };
        assert_eq!(s, SfStatus::ParseError);
        assert!(h.is_null());
        let msg = unsafe { CStr::from_ptr(sf_last_error()) }.to_str().unwrap();
        assert!(msg.starts_with("ParseError"));
        let id = CString::new("line:0").unwrap();
        assert_eq!(unsafe { sf_module_from_example(id.as_ptr(), 9, &mut h) }, SfStatus::InvalidModulus);
        assert_eq!(unsafe { sf_betti_totals(ptr::null(), ptr::null_mut(), 0, &mut 0) }, SfStatus::NullPointer);
    }

    #[test]
    fn pfaffian_and_kunneth() {
        let a: [i64; 16] = [0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0];
        let mut pf = 0;
        assert_eq!(unsafe { sf_pfaffian4(a.as_ptr(), 32003, &mut pf) }, SfStatus::Ok);
        assert_eq!(pf, 1);
        let mut h = [0i64; 3];
        let mut len = 0;
        assert_eq!(unsafe { sf_kunneth(1, 1, -2, -2, h.as_mut_ptr(), 3, &mut len) }, SfStatus::Ok);
        assert_eq!(h, [0, 0, 1]);
    }
}
