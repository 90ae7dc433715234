//! C ABI over `helm-core`.
//!
//! Complexes live behind an opaque [`HelmComplex`] handle. Every fallible
//! function returns a [`HelmStatus`]; on failure a description is available
//! from [`helm_last_error_message`] on the same thread. Matrices are written
//! row-major into caller-owned buffers. Passing a null buffer only reports
//! the shape. Strings returned by the library must be released with
//! [`helm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use helm_core::complex::OrientedComplex;
use helm_core::helmholtzian::{assemble_entrywise, assemble_product, verify_equivalence};
use helm_core::hodge::{self, NullityReport};
use helm_core::incidence::{build_b, build_c, EdgeFlow};
use helm_core::{Error, IntMatrix};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HelmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed edge list or JSON document.
    Parse = 3,
    /// Self-loop or duplicate edge.
    InvalidGraph = 4,
    DimensionMismatch = 5,
    BufferTooSmall = 6,
    NonFinite = 7,
    /// Product and entrywise assembly disagree, or a decomposition misses
    /// its tolerance.
    VerificationFailed = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
    /// An argument outside its domain, such as a non-positive tolerance.
    InvalidArgument = 10,
}

/// Assembly route for [`helm_complex_helmholtzian`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HelmMethod {
    Product = 0,
    Entrywise = 1,
    /// Both routes, compared entry by entry.
    Verify = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HelmNullityReport {
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub omega: usize,
    pub rank_b: usize,
    pub rank_c: usize,
    pub eta_exact: usize,
    /// `m - n - t + omega`; may be negative when triangles are dependent.
    pub eta_predicted: i64,
    pub triangles_independent: bool,
}

impl From<NullityReport> for HelmNullityReport {
    fn from(r: NullityReport) -> Self {
        HelmNullityReport {
            n: r.n,
            m: r.m,
            t: r.t,
            omega: r.omega,
            rank_b: r.rank_b,
            rank_c: r.rank_c,
            eta_exact: r.eta_exact,
            eta_predicted: r.eta_predicted,
            triangles_independent: r.triangles_independent,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HelmRanking {
    pub consistency_ratio: f64,
    pub harmonic_ratio: f64,
    pub curl_ratio: f64,
    /// Set for the zero flow.
    pub degenerate: bool,
}

/// Opaque handle to an oriented clique complex.
pub struct HelmComplex(OrientedComplex);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: HelmStatus, message: impl Into<String>) -> HelmStatus {
    set_last_error(message.into());
    status
}

fn status_of(e: &Error) -> HelmStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) | Error::MatrixMarket { .. } => HelmStatus::Parse,
        Error::DimensionMismatch { .. } => HelmStatus::DimensionMismatch,
        Error::NonFinite(_) => HelmStatus::NonFinite,
        _ => HelmStatus::InvalidGraph,
    }
}

fn from_core(e: Error) -> HelmStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `body`, turning panics into [`HelmStatus::Internal`].
fn guard(body: impl FnOnce() -> HelmStatus) -> HelmStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|payload| {
        let what = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        fail(HelmStatus::Internal, format!("internal error: {what}"))
    })
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, HelmStatus> {
    if text.is_null() {
        return Err(fail(HelmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(HelmStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle_ref<'a>(handle: *const HelmComplex) -> Result<&'a OrientedComplex, HelmStatus> {
    handle
        .as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(HelmStatus::NullPointer, "null complex handle"))
}

unsafe fn read_flow(flow: *const f64, len: usize, m: usize) -> Result<EdgeFlow, HelmStatus> {
    if len != m {
        return Err(fail(
            HelmStatus::DimensionMismatch,
            Error::DimensionMismatch { expected: m, found: len }.to_string(),
        ));
    }
    if flow.is_null() && m > 0 {
        return Err(fail(HelmStatus::NullPointer, "null flow buffer"));
    }
    let values = if m == 0 { Vec::new() } else { std::slice::from_raw_parts(flow, m).to_vec() };
    EdgeFlow::new(values).map_err(from_core)
}

unsafe fn write_out<T: Copy>(dst: *mut T, capacity: usize, src: &[T]) -> HelmStatus {
    if dst.is_null() {
        return HelmStatus::Ok;
    }
    if capacity < src.len() {
        return fail(
            HelmStatus::BufferTooSmall,
            format!("buffer holds {capacity} values, {} required", src.len()),
        );
    }
    ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    HelmStatus::Ok
}

unsafe fn write_matrix(m: &IntMatrix, buf: *mut i64, capacity: usize, rows: *mut usize, cols: *mut usize) -> HelmStatus {
    if let Some(r) = rows.as_mut() {
        *r = m.rows();
    }
    if let Some(c) = cols.as_mut() {
        *c = m.cols();
    }
    let flat: Vec<i64> = m.to_rows().into_iter().flatten().collect();
    write_out(buf, capacity, &flat)
}

unsafe fn into_handle(c: OrientedComplex, out: *mut *mut HelmComplex) -> HelmStatus {
    *out = Box::into_raw(Box::new(HelmComplex(c)));
    HelmStatus::Ok
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn helm_status_message(status: HelmStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HelmStatus::Ok => c"ok",
        HelmStatus::NullPointer => c"null pointer argument",
        HelmStatus::InvalidUtf8 => c"string is not valid UTF-8",
        HelmStatus::Parse => c"malformed input",
        HelmStatus::InvalidGraph => c"invalid graph",
        HelmStatus::DimensionMismatch => c"dimension mismatch",
        HelmStatus::BufferTooSmall => c"output buffer too small",
        HelmStatus::NonFinite => c"non-finite value",
        HelmStatus::VerificationFailed => c"verification failed",
        HelmStatus::Internal => c"internal error",
        HelmStatus::InvalidArgument => c"invalid argument",
    };
    s.as_ptr()
}

/// Message for the last failure on this thread, or null if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn helm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a whitespace-separated edge list.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_from_edge_list(text: *const c_char, out: *mut *mut HelmComplex) -> HelmStatus {
    guard(|| {
        if out.is_null() {
            return fail(HelmStatus::NullPointer, "null output handle");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match OrientedComplex::from_edge_list(text) {
            Ok(c) => into_handle(c, out),
            Err(e) => from_core(e),
        }
    })
}

/// Reads the JSON document produced by [`helm_complex_to_json`].
///
/// # Safety
/// As for [`helm_complex_from_edge_list`].
#[no_mangle]
pub unsafe extern "C" fn helm_complex_from_json(text: *const c_char, out: *mut *mut HelmComplex) -> HelmStatus {
    guard(|| {
        if out.is_null() {
            return fail(HelmStatus::NullPointer, "null output handle");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match OrientedComplex::from_json(text) {
            Ok(c) => into_handle(c, out),
            Err(e) => from_core(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `complex` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_free(complex: *mut HelmComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Vertex, edge, triangle and component counts. Null outputs are skipped.
///
/// # Safety
/// `complex` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_counts(
    complex: *const HelmComplex,
    n: *mut usize,
    m: *mut usize,
    t: *mut usize,
    omega: *mut usize,
) -> HelmStatus {
    guard(|| {
        let c = match handle_ref(complex) {
            Ok(c) => c,
            Err(s) => return s,
        };
        for (dst, v) in [
            (n, c.vertex_count()),
            (m, c.edge_count()),
            (t, c.triangle_count()),
            (omega, c.graph().component_count()),
        ] {
            if let Some(d) = dst.as_mut() {
                *d = v;
            }
        }
        HelmStatus::Ok
    })
}

/// Exact nullity report.
///
/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_nullity(complex: *const HelmComplex, out: *mut HelmNullityReport) -> HelmStatus {
    guard(|| {
        let c = match handle_ref(complex) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let Some(out) = out.as_mut() else {
            return fail(HelmStatus::NullPointer, "null report pointer");
        };
        *out = hodge::nullity_exact(c).into();
        HelmStatus::Ok
    })
}

/// Dimension of the harmonic flow space, computed from an exact basis.
///
/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_harmonic_dimension(complex: *const HelmComplex, out: *mut usize) -> HelmStatus {
    guard(|| {
        let c = match handle_ref(complex) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let Some(out) = out.as_mut() else {
            return fail(HelmStatus::NullPointer, "null output pointer");
        };
        *out = hodge::harmonic_basis(c).dimension();
        HelmStatus::Ok
    })
}

/// Edge-vertex incidence `B` (m × n), row-major.
///
/// # Safety
/// `buf` must hold `capacity` values or be null; `rows`, `cols` may be null.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_incidence_b(
    complex: *const HelmComplex,
    buf: *mut i64,
    capacity: usize,
    rows: *mut usize,
    cols: *mut usize,
) -> HelmStatus {
    guard(|| match handle_ref(complex) {
        Ok(c) => write_matrix(build_b(c).matrix(), buf, capacity, rows, cols),
        Err(s) => s,
    })
}

/// Triangle-edge incidence `C` (t × m), row-major.
///
/// # Safety
/// As for [`helm_complex_incidence_b`].
#[no_mangle]
pub unsafe extern "C" fn helm_complex_incidence_c(
    complex: *const HelmComplex,
    buf: *mut i64,
    capacity: usize,
    rows: *mut usize,
    cols: *mut usize,
) -> HelmStatus {
    guard(|| match handle_ref(complex) {
        Ok(c) => write_matrix(build_c(c).matrix(), buf, capacity, rows, cols),
        Err(s) => s,
    })
}

/// The Helmholtzian (m × m), row-major. With [`HelmMethod::Verify`] a
/// disagreement between the two routes yields
/// [`HelmStatus::VerificationFailed`] and nothing is written.
///
/// # Safety
/// As for [`helm_complex_incidence_b`].
#[no_mangle]
pub unsafe extern "C" fn helm_complex_helmholtzian(
    complex: *const HelmComplex,
    method: HelmMethod,
    buf: *mut i64,
    capacity: usize,
    rows: *mut usize,
    cols: *mut usize,
) -> HelmStatus {
    guard(|| {
        let c = match handle_ref(complex) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let h = match method {
            HelmMethod::Product => match assemble_product(&build_b(c), &build_c(c)) {
                Ok(h) => h,
                Err(e) => return from_core(e),
            },
            HelmMethod::Entrywise => assemble_entrywise(c),
            HelmMethod::Verify => {
                let eq = verify_equivalence(c);
                match (eq.verified, eq.first_discrepancy) {
                    (Some(h), _) => h,
                    (None, d) => {
                        return fail(HelmStatus::VerificationFailed, format!("assembly routes disagree: {d:?}"))
                    }
                }
            }
        };
        write_matrix(h.matrix(), buf, capacity, rows, cols)
    })
}

/// Helmholtz decomposition of an edge flow of length `m`. Each non-null
/// output receives `m` values. Fails with
/// [`HelmStatus::VerificationFailed`] if the parts miss the relative
/// tolerance `tol` (outputs are still written).
///
/// # Safety
/// `flow` must hold `len` values; non-null outputs must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_decompose(
    complex: *const HelmComplex,
    flow: *const f64,
    len: usize,
    tol: f64,
    gradient: *mut f64,
    harmonic: *mut f64,
    curl: *mut f64,
) -> HelmStatus {
    guard(|| {
        let c = match handle_ref(complex) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if tol.is_nan() || tol <= 0.0 {
            return fail(HelmStatus::InvalidArgument, "tolerance must be positive");
        }
        let f = match read_flow(flow, len, c.edge_count()) {
            Ok(f) => f,
            Err(s) => return s,
        };
        let d = match hodge::helmholtz_decompose(c, &f) {
            Ok(d) => d,
            Err(e) => return from_core(e),
        };
        for (dst, part) in [(gradient, &d.gradient_part), (harmonic, &d.harmonic_part), (curl, &d.curl_part)] {
            write_out(dst, len, part.values());
        }
        if !d.within(tol) {
            return fail(HelmStatus::VerificationFailed, format!("decomposition exceeds tolerance {tol:e}"));
        }
        HelmStatus::Ok
    })
}

/// Least-squares vertex scores (mean zero per component) into `potential`,
/// which must hold `n` values when non-null.
///
/// # Safety
/// `flow` must hold `len` values; `potential` must hold `n` values or be
/// null; `out` may be null.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_rank(
    complex: *const HelmComplex,
    flow: *const f64,
    len: usize,
    potential: *mut f64,
    capacity: usize,
    out: *mut HelmRanking,
) -> HelmStatus {
    guard(|| {
        let c = match handle_ref(complex) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let f = match read_flow(flow, len, c.edge_count()) {
            Ok(f) => f,
            Err(s) => return s,
        };
        let r = match hodge::rank_flows(c, &f) {
            Ok(r) => r,
            Err(e) => return from_core(e),
        };
        if let Some(out) = out.as_mut() {
            *out = HelmRanking {
                consistency_ratio: r.consistency_ratio,
                harmonic_ratio: r.harmonic_ratio,
                curl_ratio: r.curl_ratio,
                degenerate: r.degenerate,
            };
        }
        write_out(potential, capacity, r.potential.values())
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// The complex as a JSON document (vertices, edges, triangles). Release
/// with [`helm_string_free`]. Null on failure.
///
/// # Safety
/// `complex` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_to_json(complex: *const HelmComplex) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| match handle_ref(complex) {
        Ok(c) => {
            result = to_c_string(c.to_json());
            HelmStatus::Ok
        }
        Err(s) => s,
    });
    result
}

/// The nullity report as JSON. Release with [`helm_string_free`].
///
/// # Safety
/// `complex` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn helm_complex_nullity_json(complex: *const HelmComplex) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| match handle_ref(complex) {
        Ok(c) => match serde_json::to_string(&hodge::nullity_exact(c)) {
            Ok(s) => {
                result = to_c_string(s);
                HelmStatus::Ok
            }
            Err(e) => fail(HelmStatus::Internal, e.to_string()),
        },
        Err(s) => s,
    });
    result
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn helm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
