//! C ABI over the `bergball` core.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Strings returned through `out` pointers
//! are owned by the caller and released with [`bb_string_free`]. Every
//! fallible call returns a [`BbStatus`]; the message for the last failure on
//! the calling thread is available from [`bb_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bergball::arith::MultiIndex;
use bergball::bergman::{berezin_series, QuasiHomSymbol};
use bergball::bhsuite::builtin_suites;
use bergball::mellin::{product_symbol, range_decision, RangeDecision};
use bergball::symbolic::{parse_bipoly, BiPolynomial};
use bergball::Error;

/// Result codes. `BB_STATUS_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    DimensionMismatch = 4,
    Precondition = 5,
    /// The target is outside the range of the Berezin transform.
    NotInRange = 6,
    /// The Toeplitz product has no symbol.
    NotRepresentable = 7,
    Unsupported = 8,
    Internal = 9,
}

/// Polynomial in `z` and `zbar`.
pub struct BbPolynomial(BiPolynomial);

/// Quasi-homogeneous symbol `sum c z^a zbar^b t^k (log t)^e`.
pub struct BbSymbol(QuasiHomSymbol);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BbStatus {
    match e {
        Error::Parse(_) => BbStatus::Parse,
        Error::DimensionMismatch { .. } => BbStatus::DimensionMismatch,
        Error::PreconditionViolation(_) | Error::NotHolomorphic(_) | Error::NotPluriharmonic(_) => {
            BbStatus::Precondition
        }
        Error::NotRepresentable { .. } => BbStatus::NotRepresentable,
        Error::UnsupportedPoles(_)
        | Error::UnsupportedProduct(_)
        | Error::NonIntegrable(_)
        | Error::DegreeTooLarge { .. }
        | Error::ImproperFunction(_) => BbStatus::Unsupported,
        _ => BbStatus::Internal,
    }
}

struct Fail(BbStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Run `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BbStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BbStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(BbStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(BbStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(BbStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BbStatus::NullPointer, "null output pointer".into()));
    }
    *out = v;
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(BbStatus::Internal, "interior NUL in output".into()))?;
    put(out, c.into_raw())
}

unsafe fn indices(p: *const u32, n: usize) -> Result<MultiIndex, Fail> {
    if p.is_null() {
        return Err(Fail(BbStatus::NullPointer, "null multi-index".into()));
    }
    Ok(MultiIndex::new(std::slice::from_raw_parts(p, n).to_vec()))
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn bb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `coeff * z^(..) * zbar^(..) + ...`. `dim = 0` infers the dimension.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_polynomial_parse(src: *const c_char, dim: usize, out: *mut *mut BbPolynomial) -> BbStatus {
    guard(|| {
        let p = parse_bipoly(text(src)?, (dim > 0).then_some(dim))?;
        put(out, Box::into_raw(Box::new(BbPolynomial(p))))
    })
}

/// # Safety
/// `p` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn bb_polynomial_free(p: *mut BbPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_polynomial_to_string(p: *const BbPolynomial, out: *mut *mut c_char) -> BbStatus {
    guard(|| put_string(out, handle(p)?.0.to_string()))
}

/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_symbol_parse(src: *const c_char, dim: usize, out: *mut *mut BbSymbol) -> BbStatus {
    guard(|| {
        let s = QuasiHomSymbol::parse(text(src)?, (dim > 0).then_some(dim))?;
        put(out, Box::into_raw(Box::new(BbSymbol(s))))
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_symbol_from_polynomial(p: *const BbPolynomial, out: *mut *mut BbSymbol) -> BbStatus {
    guard(|| {
        let s = QuasiHomSymbol::from_bipoly(&handle(p)?.0);
        put(out, Box::into_raw(Box::new(BbSymbol(s))))
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn bb_symbol_free(s: *mut BbSymbol) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Text form, e.g. `1 + log(t)`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_symbol_to_string(s: *const BbSymbol, out: *mut *mut c_char) -> BbStatus {
    guard(|| put_string(out, handle(s)?.0.to_string()))
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_symbol_to_json(s: *const BbSymbol, out: *mut *mut c_char) -> BbStatus {
    guard(|| put_string(out, handle(s)?.0.to_json().to_string()))
}

/// Berezin transform coefficients up to total degree `degree`, as JSON.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_berezin_series_json(s: *const BbSymbol, degree: u32, out: *mut *mut c_char) -> BbStatus {
    guard(|| {
        let cs = berezin_series(&handle(s)?.0, degree)?;
        put_string(out, cs.to_json().to_string())
    })
}

/// Symbol whose Berezin transform is `target`. Returns `NotInRange` when
/// the range criterion fails; the message names the offending derivative.
///
/// # Safety
/// `target` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bb_range_preimage(target: *const BbPolynomial, out: *mut *mut BbSymbol) -> BbStatus {
    guard(|| {
        let f = &handle(target)?.0;
        match range_decision(f, f.dim())? {
            RangeDecision::InRange { symbol, .. } => put(out, Box::into_raw(Box::new(BbSymbol(symbol)))),
            RangeDecision::Violation { j, l, degree } => Err(Fail(
                BbStatus::NotInRange,
                format!("d/dz_{j} d/dzbar_{l} has total degree {degree} > {}", 2 * f.dim() - 1),
            )),
        }
    })
}

/// Symbol `u` with `T_(z^hol) T_(zbar^anti) = T_u`; both arrays have length `n`.
///
/// # Safety
/// `hol` and `anti` must point to `n` readable values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn bb_product_symbol(
    hol: *const u32,
    anti: *const u32,
    n: usize,
    out: *mut *mut BbSymbol,
) -> BbStatus {
    guard(|| {
        let u = product_symbol(&indices(hol, n)?, &indices(anti, n)?, n)?;
        put(out, Box::into_raw(Box::new(BbSymbol(u))))
    })
}

/// Built-in example suite as a JSON report; `*passed` is 1 when nothing failed.
///
/// # Safety
/// `out` and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bb_run_suite_json(
    n: usize,
    degree: u32,
    seed: u64,
    out: *mut *mut c_char,
    passed: *mut i32,
) -> BbStatus {
    guard(|| {
        if n == 0 {
            return Err(Fail(BbStatus::Precondition, "dimension must be at least 1".into()));
        }
        let r = builtin_suites(n, degree, seed)?;
        put(passed, r.passed() as i32)?;
        put_string(out, serde_json::to_string(&r).expect("serializable"))
    })
}

/// Run the command-line front end on `argv[0..argc]` (without the program
/// name) and return its exit code. Output is returned through the optional
/// `out_stdout` and `out_stderr`.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; the outputs may be null.
#[no_mangle]
pub unsafe extern "C" fn bb_run_command(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> i32 {
    let mut args = vec!["bergball".to_string()];
    if argc > 0 {
        if argv.is_null() {
            set_error("null argv");
            return bergball::cli::EXIT_USAGE;
        }
        for k in 0..argc {
            match text(*argv.add(k)) {
                Ok(s) => args.push(s.to_string()),
                Err(Fail(_, m)) => {
                    set_error(&m);
                    return bergball::cli::EXIT_USAGE;
                }
            }
        }
    }
    let o = match catch_unwind(|| bergball::cli::run_command(args)) {
        Ok(o) => o,
        Err(_) => {
            set_error("internal panic");
            return bergball::cli::EXIT_USAGE;
        }
    };
    for (p, s) in [(out_stdout, o.stdout), (out_stderr, o.stderr)] {
        if !p.is_null() {
            *p = CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut());
        }
    }
    o.code
}
