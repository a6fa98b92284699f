//! C ABI for `condensation-kit`.
//!
//! Matrices and graphs are opaque handles owned by the caller and released with
//! the matching `*_free` function. Ring elements cross the boundary as decimal
//! strings (`Z/m` values as their residue in `0..m`), allocated here and
//! released with [`ck_string_free`]. Every fallible call returns a
//! [`CkStatus`]; on failure [`ck_last_error`] describes the most recent error on
//! the calling thread.
//!
//! A `modulus` argument of 0 selects the integers, any value of at least 2
//! selects `Z/modulus`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use condensation_kit::funcmap::EndoMap;
use condensation_kit::identities::Theorem;
use condensation_kit::io::{parse_graph, parse_matrix};
use condensation_kit::verify::{self, Mode, VerifyConfig};
use condensation_kit::{Error, Matrix, Ring, RingValue, WeightedDigraph};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    DimensionMismatch = 4,
    BoundExceeded = 5,
    NotIntegralDomain = 6,
    DivisionByZero = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkDetAlgo {
    Chio = 0,
    Leibniz = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkTheorem {
    Chio = 0,
    ChioGen = 1,
    Supergen = 2,
    Mtt = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkMode {
    Symbolic = 0,
    Random = 1,
}

/// Opaque square or rectangular matrix over `Z` or `Z/m`.
pub struct CkMatrix(Matrix);

/// Opaque weighted digraph on vertices `1..=n`.
pub struct CkGraph(WeightedDigraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CkStatus {
    match e {
        Error::Parse { .. } => CkStatus::Parse,
        Error::DimensionMismatch { .. } | Error::NotSquare { .. } => CkStatus::DimensionMismatch,
        Error::BoundExceeded { .. } => CkStatus::BoundExceeded,
        Error::NotIntegralDomain(_) => CkStatus::NotIntegralDomain,
        Error::DivisionByZero => CkStatus::DivisionByZero,
        Error::Internal(_) => CkStatus::Internal,
        _ => CkStatus::InvalidArgument,
    }
}

struct Fail(CkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(CkStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> CkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside condensation-kit");
            CkStatus::Panic
        }
    }
}

fn ring_of(modulus: u64) -> Result<Ring, Fail> {
    match modulus {
        0 => Ok(Ring::Integers),
        m => Ok(Ring::modular(m)?),
    }
}

unsafe fn text_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, v: &RingValue) -> Result<(), Fail> {
    let c = CString::new(v.to_string()).map_err(|e| Fail(CkStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn i64_slice<'a>(data: *const i64, len: usize) -> Result<&'a [i64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("data"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

fn checked_len(rows: usize, cols: usize) -> Result<usize, Fail> {
    rows.checked_mul(cols)
        .ok_or_else(|| Fail(CkStatus::InvalidArgument, "dimensions overflow".into()))
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a `rows x cols` matrix from row-major 64-bit entries.
///
/// # Safety
/// `data` must point to `rows * cols` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_matrix_from_i64(
    rows: usize,
    cols: usize,
    data: *const i64,
    modulus: u64,
    out: *mut *mut CkMatrix,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ring = ring_of(modulus)?;
        let vals = i64_slice(data, checked_len(rows, cols)?)?;
        let entries = vals.iter().map(|&v| ring.from_i64(v)).collect();
        let m = Matrix::new(ring, rows, cols, entries)?;
        *out = Box::into_raw(Box::new(CkMatrix(m)));
        Ok(())
    })
}

/// Parses a matrix in the text format (`rows cols` header, then rows).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_matrix_parse(
    text: *const c_char,
    modulus: u64,
    out: *mut *mut CkMatrix,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = parse_matrix(text_arg(text, "text")?, &ring_of(modulus)?)?;
        *out = Box::into_raw(Box::new(CkMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ck_matrix_free(m: *mut CkMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ck_matrix_rows(m: *const CkMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ck_matrix_cols(m: *const CkMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Entry `(i, j)`, 1-based, as a decimal string.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_matrix_entry(
    m: *const CkMatrix,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let m = &m.as_ref().ok_or_else(|| null("matrix"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        if i == 0 || i > m.rows() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: m.rows(),
            }
            .into());
        }
        if j == 0 || j > m.cols() {
            return Err(Error::IndexOutOfRange {
                index: j,
                n: m.cols(),
            }
            .into());
        }
        write_string(out, m.get(i, j))
    })
}

/// Exact determinant as a decimal string.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_det(
    m: *const CkMatrix,
    algo: CkDetAlgo,
    out: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let m = &m.as_ref().ok_or_else(|| null("matrix"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = match algo {
            CkDetAlgo::Chio => m.chio_det()?,
            CkDetAlgo::Leibniz => m.leibniz_det()?,
        };
        write_string(out, &d)
    })
}

/// One condensation step on the bottom-right pivot: writes the
/// `(n-1) x (n-1)` condensed matrix and the factor `a_nn^(n-2)`.
///
/// # Safety
/// `m` must be a live handle; `out` and `factor` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_condense(
    m: *const CkMatrix,
    out: *mut *mut CkMatrix,
    factor: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let m = &m.as_ref().ok_or_else(|| null("matrix"))?.0;
        if out.is_null() || factor.is_null() {
            return Err(null("output pointer"));
        }
        let (c, f) = m.chio_condense()?;
        write_string(factor, &f)?;
        *out = Box::into_raw(Box::new(CkMatrix(c)));
        Ok(())
    })
}

/// Builds a digraph on `n` vertices from a row-major `n x n` weight matrix;
/// `weights[(i-1)*n + (j-1)]` is the weight of the arc `i -> j`.
///
/// # Safety
/// `weights` must point to `n * n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_graph_from_i64(
    n: usize,
    weights: *const i64,
    modulus: u64,
    out: *mut *mut CkGraph,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ring = ring_of(modulus)?;
        let vals = i64_slice(weights, checked_len(n, n)?)?;
        let entries = vals.iter().map(|&v| ring.from_i64(v)).collect();
        let g = WeightedDigraph::new(Matrix::new(ring, n, n, entries)?)?;
        *out = Box::into_raw(Box::new(CkGraph(g)));
        Ok(())
    })
}

/// Parses a digraph in the text format (`digraph n`, then `tail head weight`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_graph_parse(
    text: *const c_char,
    modulus: u64,
    out: *mut *mut CkGraph,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = parse_graph(text_arg(text, "text")?, &ring_of(modulus)?)?;
        *out = Box::into_raw(Box::new(CkGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ck_graph_free(g: *mut CkGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Weighted count of spanning arborescences oriented toward `root`
/// (0 selects vertex `n`).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_count_arborescences(
    g: *const CkGraph,
    root: usize,
    out: *mut *mut c_char,
) -> CkStatus {
    guard(|| {
        let g = &g.as_ref().ok_or_else(|| null("graph"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let root = if root == 0 { g.n() } else { root };
        let count = g.relabel_root(root)?.count_arborescences()?;
        write_string(out, &count)
    })
}

/// Whether the map `i -> images[i-1]` on `1..=n` is n-potent. The map must
/// fix `n`.
///
/// # Safety
/// `images` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_is_n_potent(
    images: *const usize,
    n: usize,
    out: *mut bool,
) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if images.is_null() && n > 0 {
            return Err(null("images"));
        }
        let imgs = if n == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(images, n).to_vec()
        };
        *out = EndoMap::new(imgs)?.is_n_potent()?;
        Ok(())
    })
}

/// Runs an identity sweep. `all_ok` receives whether every case held and
/// `cases` (if non-null) the number of cases checked. `trials`, `seed` and
/// `modulus` only apply to random mode.
///
/// # Safety
/// `all_ok` must be writable; `cases` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ck_verify(
    theorem: CkTheorem,
    n: usize,
    mode: CkMode,
    trials: usize,
    seed: u64,
    modulus: u64,
    all_ok: *mut bool,
    cases: *mut usize,
) -> CkStatus {
    guard(|| {
        if all_ok.is_null() {
            return Err(null("all_ok"));
        }
        let theorem = match theorem {
            CkTheorem::Chio => Theorem::Chio,
            CkTheorem::ChioGen => Theorem::ChioGen,
            CkTheorem::Supergen => Theorem::Supergen,
            CkTheorem::Mtt => Theorem::Mtt,
        };
        let mode = match mode {
            CkMode::Symbolic => Mode::Symbolic,
            CkMode::Random => Mode::Random,
        };
        let mut cfg = VerifyConfig::new(theorem, n, mode);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.ring = ring_of(modulus)?;
        let reports = verify::run(&cfg)?;
        *all_ok = reports.iter().all(|r| r.verdict);
        if !cases.is_null() {
            *cases = reports.len();
        }
        Ok(())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
