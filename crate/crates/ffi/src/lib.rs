//! C ABI for `reachobs`.
//!
//! Matrices and problems cross the boundary as opaque handles created by
//! `ro_*_new`/`ro_*_from_*` and released with the matching `*_free`. Every
//! fallible call returns an [`RoStatus`]; on failure `ro_last_error`
//! returns a description valid until the next call on the same thread.
//! Strings returned by the library are owned by the caller and released
//! with `ro_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use reachobs::exact_field::{format_scalar, from_frac, parse_scalar};
use reachobs::io::{parse_matrix, serialize_matrix, MatrixDocument};
use reachobs::pair_solver::{solution_family, PairProblem};
use reachobs::{Error, Mat, RealizationProblem};

/// Opaque exact rational matrix.
pub struct RoMatrix(Mat);

/// Opaque `(V, W, p, q, k, m)` problem.
pub struct RoProblem(RealizationProblem);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoStatus {
    Ok = 0,
    NullPointer = 1,
    Dimension = 2,
    Infeasible = 3,
    Parse = 4,
    InvalidArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RoFeasibility {
    pub cond_kernel: bool,
    pub cond_image: bool,
    pub cond_interlock: bool,
    pub feasible: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> RoStatus {
    match err {
        Error::Dimension { .. } => RoStatus::Dimension,
        Error::NoCommonSolution(_) | Error::Infeasible(_) | Error::ApproxInfeasible(_) => RoStatus::Infeasible,
        Error::Scalar { .. } | Error::Document { .. } => RoStatus::Parse,
        _ => RoStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (RoStatus, String)>) -> RoStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RoStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RoStatus::Panic
        }
    }
}

fn lib<T>(r: reachobs::Result<T>) -> Result<T, (RoStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (RoStatus, String)> {
    p.as_ref().ok_or_else(|| (RoStatus::NullPointer, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), (RoStatus, String)> {
    if out.is_null() {
        return Err((RoStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn boxed(m: Mat) -> *mut RoMatrix {
    Box::into_raw(Box::new(RoMatrix(m)))
}

fn bounds(m: &Mat, row: usize, col: usize) -> Result<(), (RoStatus, String)> {
    if row >= m.rows() || col >= m.cols() {
        return Err((
            RoStatus::Dimension,
            format!("index ({row}, {col}) outside {}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(())
}

#[no_mangle]
pub extern "C" fn ro_matrix_zeros(rows: usize, cols: usize) -> *mut RoMatrix {
    boxed(Mat::zeros(rows, cols))
}

#[no_mangle]
pub extern "C" fn ro_matrix_identity(n: usize) -> *mut RoMatrix {
    boxed(Mat::identity(n))
}

/// Builds a matrix from `rows * cols` row-major integers. Returns null if
/// `data` is null while the matrix is nonempty.
#[no_mangle]
pub unsafe extern "C" fn ro_matrix_from_i64(rows: usize, cols: usize, data: *const i64) -> *mut RoMatrix {
    let Some(len) = rows.checked_mul(cols) else {
        set_error("size overflow");
        return ptr::null_mut();
    };
    if len == 0 {
        return boxed(Mat::zeros(rows, cols));
    }
    if data.is_null() {
        set_error("data is null");
        return ptr::null_mut();
    }
    let values = std::slice::from_raw_parts(data, len);
    boxed(Mat::from_fn(rows, cols, |i, j| reachobs::exact_field::from_int(values[i * cols + j])))
}

#[no_mangle]
pub unsafe extern "C" fn ro_matrix_free(m: *mut RoMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ro_matrix_rows(m: *const RoMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

#[no_mangle]
pub unsafe extern "C" fn ro_matrix_cols(m: *const RoMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

#[no_mangle]
pub unsafe extern "C" fn ro_matrix_set_ratio(m: *mut RoMatrix, row: usize, col: usize, num: i64, den: i64) -> RoStatus {
    guard(|| {
        let m = m.as_mut().ok_or((RoStatus::NullPointer, "matrix is null".to_string()))?;
        bounds(&m.0, row, col)?;
        m.0.set(row, col, lib(from_frac(num, den))?);
        Ok(())
    })
}

/// Sets an entry from its text form (`"p"` or `"p/q"`).
#[no_mangle]
pub unsafe extern "C" fn ro_matrix_set_str(m: *mut RoMatrix, row: usize, col: usize, text: *const c_char) -> RoStatus {
    guard(|| {
        let m = m.as_mut().ok_or((RoStatus::NullPointer, "matrix is null".to_string()))?;
        let text = c_str(text)?;
        bounds(&m.0, row, col)?;
        m.0.set(row, col, lib(parse_scalar(text))?);
        Ok(())
    })
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, (RoStatus, String)> {
    if p.is_null() {
        return Err((RoStatus::NullPointer, "string is null".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (RoStatus::Parse, e.to_string()))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Canonical text of one entry, or null on error.
#[no_mangle]
pub unsafe extern "C" fn ro_matrix_get_str(m: *const RoMatrix, row: usize, col: usize) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let m = deref(m, "matrix")?;
        bounds(&m.0, row, col)?;
        out = owned_string(format_scalar(m.0.get(row, col)));
        Ok(())
    });
    out
}

#[no_mangle]
pub unsafe extern "C" fn ro_matrix_equal(a: *const RoMatrix, b: *const RoMatrix) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

#[no_mangle]
pub unsafe extern "C" fn ro_matrix_from_json(text: *const c_char, out: *mut *mut RoMatrix) -> RoStatus {
    guard(|| {
        let m = lib(parse_matrix(c_str(text)?).and_then(|d| d.to_exact()))?;
        store(out, RoMatrix(m))
    })
}

/// Matrix document JSON, or null on error.
#[no_mangle]
pub unsafe extern "C" fn ro_matrix_to_json(m: *const RoMatrix) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let m = deref(m, "matrix")?;
        out = owned_string(serialize_matrix(&MatrixDocument::from_exact(&m.0)));
        Ok(())
    });
    out
}

#[no_mangle]
pub unsafe extern "C" fn ro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn ro_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn ro_matrix_rank(m: *const RoMatrix, out: *mut usize) -> RoStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        if out.is_null() {
            return Err((RoStatus::NullPointer, "output pointer is null".into()));
        }
        *out = reachobs::rank(&m.0);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ro_g1_inverse(f: *const RoMatrix, out: *mut *mut RoMatrix) -> RoStatus {
    guard(|| {
        let f = deref(f, "matrix")?;
        store(out, RoMatrix(reachobs::g1_inverse(&f.0)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ro_is_g1_inverse(f: *const RoMatrix, y: *const RoMatrix, out: *mut bool) -> RoStatus {
    guard(|| {
        let f = deref(f, "F")?;
        let y = deref(y, "Y")?;
        if out.is_null() {
            return Err((RoStatus::NullPointer, "output pointer is null".into()));
        }
        *out = lib(reachobs::is_g1_inverse(&f.0, &y.0))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ro_reachability_matrix(
    a: *const RoMatrix,
    b: *const RoMatrix,
    k: usize,
    out: *mut *mut RoMatrix,
) -> RoStatus {
    guard(|| {
        let v = lib(reachobs::reachability_matrix(&deref(a, "A")?.0, &deref(b, "B")?.0, k))?;
        store(out, RoMatrix(v))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ro_observability_matrix(
    a: *const RoMatrix,
    c: *const RoMatrix,
    m: usize,
    out: *mut *mut RoMatrix,
) -> RoStatus {
    guard(|| {
        let w = lib(reachobs::observability_matrix(&deref(a, "A")?.0, &deref(c, "C")?.0, m))?;
        store(out, RoMatrix(w))
    })
}

/// Copies `v` and `w` into a new problem handle.
#[no_mangle]
pub unsafe extern "C" fn ro_problem_new(
    v: *const RoMatrix,
    w: *const RoMatrix,
    p: usize,
    q: usize,
    k: usize,
    m: usize,
    out: *mut *mut RoProblem,
) -> RoStatus {
    guard(|| {
        let prob = lib(RealizationProblem::new(
            deref(v, "V")?.0.clone(),
            deref(w, "W")?.0.clone(),
            p,
            q,
            k,
            m,
        ))?;
        store(out, RoProblem(prob))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ro_problem_free(p: *mut RoProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ro_check_feasibility(prob: *const RoProblem, out: *mut RoFeasibility) -> RoStatus {
    guard(|| {
        let prob = deref(prob, "problem")?;
        if out.is_null() {
            return Err((RoStatus::NullPointer, "output pointer is null".into()));
        }
        let r = reachobs::check_feasibility(&prob.0);
        *out = RoFeasibility {
            cond_kernel: r.cond_kernel,
            cond_image: r.cond_image,
            cond_interlock: r.cond_interlock,
            feasible: r.feasible,
        };
        Ok(())
    })
}

/// Recovers `(A, B, C)`. A null `z` means the zero free parameter.
/// Returns `RO_STATUS_INFEASIBLE` when no triple exists.
#[no_mangle]
pub unsafe extern "C" fn ro_realize(
    prob: *const RoProblem,
    z: *const RoMatrix,
    out_a: *mut *mut RoMatrix,
    out_b: *mut *mut RoMatrix,
    out_c: *mut *mut RoMatrix,
) -> RoStatus {
    guard(|| {
        let prob = deref(prob, "problem")?;
        if out_a.is_null() || out_b.is_null() || out_c.is_null() {
            return Err((RoStatus::NullPointer, "output pointer is null".into()));
        }
        let n = prob.0.n();
        let zero;
        let z = match z.as_ref() {
            Some(z) => &z.0,
            None => {
                zero = Mat::zeros(n, n);
                &zero
            }
        };
        let t = lib(reachobs::realize(&prob.0, z))?;
        store(out_a, RoMatrix(t.a))?;
        store(out_b, RoMatrix(t.b))?;
        store(out_c, RoMatrix(t.c))
    })
}

/// One common solution of `F·X = C`, `X·H = D`: the particular solution
/// plus the free parameter `z` (null for zero) pushed through both
/// annihilators.
#[no_mangle]
pub unsafe extern "C" fn ro_solve_pair(
    f: *const RoMatrix,
    c: *const RoMatrix,
    h: *const RoMatrix,
    d: *const RoMatrix,
    z: *const RoMatrix,
    out_x: *mut *mut RoMatrix,
) -> RoStatus {
    guard(|| {
        let prob = lib(PairProblem::new(
            deref(f, "F")?.0.clone(),
            deref(c, "C")?.0.clone(),
            deref(h, "H")?.0.clone(),
            deref(d, "D")?.0.clone(),
        ))?;
        let fam = lib(solution_family(&prob, None, None))?;
        let x = match z.as_ref() {
            Some(z) => lib(fam.instantiate(&z.0))?,
            None => fam.x0,
        };
        store(out_x, RoMatrix(x))
    })
}
