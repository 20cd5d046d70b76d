//! C ABI for the `aasen` crate.
//!
//! Matrices and factorizations are opaque heap handles created by
//! `aasen_*_new`-style functions and released with the matching `*_free`.
//! Every fallible call returns an [`AasenStatus`]; on failure a detail
//! message for the calling thread is available from [`aasen_last_error`].
//! Dense matrices cross the boundary as row-major `n * n` arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use aasen::{AasenFactors, Error, SymmetricMatrix, TieRule};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AasenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NonFinite = 4,
    Asymmetric = 5,
    Singular = 6,
    Domain = 7,
    Infeasible = 8,
    Internal = 9,
}

/// Pivot tie-breaking rule.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AasenTieRule {
    First = 0,
    Lowest = 1,
}

impl From<AasenTieRule> for TieRule {
    fn from(r: AasenTieRule) -> Self {
        match r {
            AasenTieRule::First => TieRule::First,
            AasenTieRule::Lowest => TieRule::Lowest,
        }
    }
}

/// Opaque symmetric matrix handle.
pub struct AasenMatrix(SymmetricMatrix);

/// Opaque factorization handle (`P A P^T = L T L^T`).
pub struct AasenFactorization(AasenFactors);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> AasenStatus {
    match e {
        Error::DimensionMismatch { .. } => AasenStatus::DimensionMismatch,
        Error::NonFinite { .. } => AasenStatus::NonFinite,
        Error::Asymmetric { .. } => AasenStatus::Asymmetric,
        Error::Singular { .. } => AasenStatus::Singular,
        Error::Domain(_) | Error::UndefinedGrowth => AasenStatus::Domain,
        Error::Infeasible | Error::Unbounded => AasenStatus::Infeasible,
        Error::EmptyMatrix
        | Error::InvalidPermutation { .. }
        | Error::Parse { .. }
        | Error::Io { .. } => AasenStatus::InvalidArgument,
        Error::InvalidFactor(_) => AasenStatus::Internal,
    }
}

/// Runs `f`, translating library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> AasenStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AasenStatus::Ok,
        Ok(Err(e)) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            AasenStatus::Internal
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_last_error("null pointer argument".into());
            return AasenStatus::NullPointer;
        }
    };
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn aasen_status_message(status: AasenStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AasenStatus::Ok => c"ok",
        AasenStatus::NullPointer => c"null pointer argument",
        AasenStatus::InvalidArgument => c"invalid argument",
        AasenStatus::DimensionMismatch => c"dimension mismatch",
        AasenStatus::NonFinite => c"non-finite input",
        AasenStatus::Asymmetric => c"matrix is not symmetric",
        AasenStatus::Singular => c"singular tridiagonal factor",
        AasenStatus::Domain => c"argument outside the supported domain",
        AasenStatus::Infeasible => c"linear program infeasible",
        AasenStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len - 1` bytes) and returns the full message
/// length in bytes. Pass a null `buf` to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn aasen_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: caller guarantees `len` writable bytes at `buf`.
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Creates a matrix from `n * n` row-major values. The two triangles must
/// agree to within 1e-12; the stored matrix is their exact average.
///
/// # Safety
/// `data` must point to `n * n` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aasen_matrix_new(
    n: usize,
    data: *const f64,
    out: *mut *mut AasenMatrix,
) -> AasenStatus {
    non_null!(data, out);
    guard(|| {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        // SAFETY: caller guarantees `n * n` readable values.
        let vals = unsafe { std::slice::from_raw_parts(data, n * n) };
        let rows: Vec<Vec<f64>> = vals.chunks(n).map(<[f64]>::to_vec).collect();
        if let Some(k) = vals.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: k / n,
                col: k % n,
            });
        }
        let m = SymmetricMatrix::from_rows_with_tolerance(&rows, aasen::io::SYMMETRY_TOL)?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = Box::into_raw(Box::new(AasenMatrix(m))) };
        Ok(())
    })
}

/// Creates the closed-form extremal matrix of order `n` (4, 5 or 6) at
/// parameter `delta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aasen_extremal_matrix(
    n: usize,
    delta: f64,
    out: *mut *mut AasenMatrix,
) -> AasenStatus {
    non_null!(out);
    guard(|| {
        let ex = aasen::extremal_example(n, delta)?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = Box::into_raw(Box::new(AasenMatrix(ex.matrix))) };
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn aasen_matrix_free(m: *mut AasenMatrix) {
    if !m.is_null() {
        // SAFETY: `m` came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Dimension of `m`, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aasen_matrix_dim(m: *const AasenMatrix) -> usize {
    // SAFETY: caller guarantees a live handle when non-null.
    unsafe { m.as_ref() }.map_or(0, |m| m.0.dim())
}

/// Copies the matrix into `out` (`n * n` doubles, row-major).
///
/// # Safety
/// `m` must be a live handle and `out` must hold `n * n` doubles.
#[no_mangle]
pub unsafe extern "C" fn aasen_matrix_values(m: *const AasenMatrix, out: *mut f64) -> AasenStatus {
    non_null!(m, out);
    // SAFETY: checked non-null; caller guarantees liveness and capacity.
    let m = unsafe { &(*m).0 };
    let n = m.dim();
    let dst = unsafe { std::slice::from_raw_parts_mut(out, n * n) };
    for i in 0..n {
        dst[i * n..(i + 1) * n].copy_from_slice(m.row(i));
    }
    AasenStatus::Ok
}

/// Factorizes `m`.
///
/// # Safety
/// `m` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aasen_factorize(
    m: *const AasenMatrix,
    rule: AasenTieRule,
    out: *mut *mut AasenFactorization,
) -> AasenStatus {
    non_null!(m, out);
    // SAFETY: checked non-null; caller guarantees liveness.
    let a = unsafe { &(*m).0 };
    guard(|| {
        let f = aasen::factorize(a, rule.into())?;
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = Box::into_raw(Box::new(AasenFactorization(f))) };
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn aasen_factorization_free(f: *mut AasenFactorization) {
    if !f.is_null() {
        // SAFETY: `f` came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Dimension of the factorization, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aasen_factorization_dim(f: *const AasenFactorization) -> usize {
    // SAFETY: caller guarantees a live handle when non-null.
    unsafe { f.as_ref() }.map_or(0, |f| f.0.dim())
}

/// Copies the permutation (`n` indices, `(P A P^T)[i][j] = A[p[i]][p[j]]`).
///
/// # Safety
/// `f` must be a live handle and `out` must hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn aasen_factorization_permutation(
    f: *const AasenFactorization,
    out: *mut usize,
) -> AasenStatus {
    non_null!(f, out);
    // SAFETY: checked non-null; caller guarantees liveness and capacity.
    let p = unsafe { (*f).0.p.as_slice() };
    unsafe { ptr::copy_nonoverlapping(p.as_ptr(), out, p.len()) };
    AasenStatus::Ok
}

/// Copies `L` as a full `n * n` row-major array (unit diagonal, zero upper
/// triangle).
///
/// # Safety
/// `f` must be a live handle and `out` must hold `n * n` doubles.
#[no_mangle]
pub unsafe extern "C" fn aasen_factorization_lower(
    f: *const AasenFactorization,
    out: *mut f64,
) -> AasenStatus {
    non_null!(f, out);
    // SAFETY: checked non-null; caller guarantees liveness and capacity.
    let l = unsafe { &(*f).0.l };
    let n = l.dim();
    let dst = unsafe { std::slice::from_raw_parts_mut(out, n * n) };
    for i in 0..n {
        for j in 0..n {
            dst[i * n + j] = l.get(i, j);
        }
    }
    AasenStatus::Ok
}

/// Copies `T`: `n` diagonal and `n - 1` off-diagonal values. `offdiag` may
/// be null when `n == 1`.
///
/// # Safety
/// `f` must be a live handle; `diag` must hold `n` doubles and `offdiag`
/// `n - 1` doubles.
#[no_mangle]
pub unsafe extern "C" fn aasen_factorization_tridiagonal(
    f: *const AasenFactorization,
    diag: *mut f64,
    offdiag: *mut f64,
) -> AasenStatus {
    non_null!(f, diag);
    // SAFETY: checked non-null; caller guarantees liveness and capacity.
    let t = unsafe { &(*f).0.t };
    unsafe { ptr::copy_nonoverlapping(t.diag().as_ptr(), diag, t.dim()) };
    if !t.offdiag().is_empty() {
        non_null!(offdiag);
        unsafe { ptr::copy_nonoverlapping(t.offdiag().as_ptr(), offdiag, t.offdiag().len()) };
    }
    AasenStatus::Ok
}

/// `max |P A P^T - L T L^T|` for the matrix the factors came from.
///
/// # Safety
/// `f` and `m` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aasen_factorization_residual(
    f: *const AasenFactorization,
    m: *const AasenMatrix,
    out: *mut f64,
) -> AasenStatus {
    non_null!(f, m, out);
    // SAFETY: checked non-null; caller guarantees liveness.
    let (f, a) = unsafe { (&(*f).0, &(*m).0) };
    guard(|| {
        let r = f.residual(a)?;
        unsafe { *out = r };
        Ok(())
    })
}

/// Growth factor `max|T| / max|A|`.
///
/// # Safety
/// `m` and `f` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aasen_growth_factor(
    m: *const AasenMatrix,
    f: *const AasenFactorization,
    out: *mut f64,
) -> AasenStatus {
    non_null!(m, f, out);
    // SAFETY: checked non-null; caller guarantees liveness.
    let (a, f) = unsafe { (&(*m).0, &(*f).0) };
    guard(|| {
        let g = aasen::growth_factor(a, f)?;
        unsafe { *out = g };
        Ok(())
    })
}

/// Checks every entrywise bound on `T`. Writes whether all pass and the
/// smallest margin; `min_margin` may be null.
///
/// # Safety
/// `m` and `f` must be live handles, `all_pass` writable, `min_margin`
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn aasen_certify(
    m: *const AasenMatrix,
    f: *const AasenFactorization,
    all_pass: *mut bool,
    min_margin: *mut f64,
) -> AasenStatus {
    non_null!(m, f, all_pass);
    // SAFETY: checked non-null; caller guarantees liveness.
    let (a, f) = unsafe { (&(*m).0, &(*f).0) };
    guard(|| {
        let cert = aasen::lemma_certificate(a, f)?;
        unsafe {
            *all_pass = cert.all_pass;
            if let Some(out) = min_margin.as_mut() {
                *out = cert.tightest().map_or(f64::INFINITY, |r| r.margin);
            }
        }
        Ok(())
    })
}

/// Solves `A x = b` with a factorization of `A`; `len` must equal `n`.
///
/// # Safety
/// `f` must be a live handle; `b` and `x` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn aasen_solve(
    f: *const AasenFactorization,
    b: *const f64,
    x: *mut f64,
    len: usize,
) -> AasenStatus {
    non_null!(f, b, x);
    // SAFETY: checked non-null; caller guarantees liveness and capacity.
    let f = unsafe { &(*f).0 };
    let rhs = unsafe { std::slice::from_raw_parts(b, len) };
    guard(|| {
        let sol = f.solve(rhs)?;
        unsafe { ptr::copy_nonoverlapping(sol.as_ptr(), x, len) };
        Ok(())
    })
}

/// Optimal total slack of the `t(n,n)` program (`n >= 3`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aasen_min_delta(n: usize, out: *mut f64) -> AasenStatus {
    non_null!(out);
    guard(|| {
        let v = aasen::min_delta(n)?;
        unsafe { *out = v };
        Ok(())
    })
}

/// `2^(n-1)` growth bound for dimension `n`.
#[no_mangle]
pub extern "C" fn aasen_growth_bound(n: usize) -> f64 {
    2.0_f64.powi(n.saturating_sub(1) as i32)
}
