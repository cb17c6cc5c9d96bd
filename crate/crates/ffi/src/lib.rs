//! C ABI over `cutspectra`.
//!
//! Graphs live behind an opaque `CsGraph` handle. Every fallible call returns
//! a `CsStatus`; on failure `cs_last_error` holds a message for the calling
//! thread. Strings handed out by the library are released with
//! `cs_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cutspectra::dinkelbach::{default_start, solve, InnerSolver, RatioProblem, SolveOptions};
use cutspectra::eigen::{verify, EigenproblemId};
use cutspectra::functionals::RatioKind;
use cutspectra::graph::parse_graph;
use cutspectra::oracles::{mincut, ratio_oracle, Caps};
use cutspectra::{Error, Graph, Rational};

/// Result codes. `CS_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    TooLarge = 5,
    UnknownProblem = 6,
    InvalidParameter = 7,
    Domain = 8,
    Panic = 9,
}

/// Opaque graph handle.
pub struct CsGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CsStatus {
    match e {
        Error::Parse { .. } => CsStatus::Parse,
        Error::SelfLoop { .. }
        | Error::NonPositiveWeight { .. }
        | Error::NegativeMeasure { .. }
        | Error::VertexOutOfRange { .. }
        | Error::IsolatedVertex(_)
        | Error::ZeroMeasure
        | Error::Disconnected => CsStatus::InvalidGraph,
        Error::TooLarge { .. } => CsStatus::TooLarge,
        Error::UnknownProblem(_) => CsStatus::UnknownProblem,
        Error::InvalidParameter(_) | Error::BadK { .. } | Error::LengthMismatch { .. } => {
            CsStatus::InvalidParameter
        }
        _ => CsStatus::Domain,
    }
}

struct Failure(CsStatus, String);

type Fallible<T> = std::result::Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any failure and converts panics into `CsStatus::Panic`.
fn guard(f: impl FnOnce() -> Fallible<()>) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return Err(Failure(CsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(CsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn graph<'a>(g: *const CsGraph) -> Fallible<&'a Graph> {
    g.as_ref().map(|h| &h.inner).ok_or(Failure(CsStatus::NullPointer, "graph handle is null".into()))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Fallible<()> {
    if p.is_null() {
        Err(Failure(CsStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

/// Parses an edge list or JSON graph. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_parse(text_ptr: *const c_char, out: *mut *mut CsGraph) -> CsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let g = parse_graph(text(text_ptr, "text")?)?;
        *out = Box::into_raw(Box::new(CsGraph { inner: g }));
        Ok(())
    })
}

/// Releases a handle from `cs_graph_parse`. Null is ignored.
///
/// # Safety
/// `g` must come from `cs_graph_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_free(g: *mut CsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_vertex_count(g: *const CsGraph, out: *mut usize) -> CsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = graph(g)?.n();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_graph_edge_count(g: *const CsGraph, out: *mut usize) -> CsStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = graph(g)?.m();
        Ok(())
    })
}

/// Exhaustive oracle for a ratio problem name (`cheeger_tv`, `maxcut`, ...)
/// or `mincut`. Writes the certificate as JSON to `*out_json`.
///
/// # Safety
/// `g` must be a live handle, `problem` a valid C string and `out_json` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_oracle(
    g: *const CsGraph,
    problem: *const c_char,
    out_json: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        out_ptr(out_json, "out_json")?;
        let g = graph(g)?;
        let name = text(problem, "problem")?;
        let caps = Caps::default();
        let cert = if name == "mincut" { mincut(g, &caps)? } else { ratio_oracle(name.parse()?, g, &caps)? };
        *out_json = to_c(serde_json::to_string(&cert).expect("report serializes"));
        Ok(())
    })
}

/// Verifies `(lambda, x)` for an eigenproblem. `lambda` is a rational literal
/// such as `2/3`; `vector` holds `n` whitespace-separated rationals.
/// `*out_verdict` is set to the verdict; `out_json` may be null, otherwise it
/// receives the full report.
///
/// # Safety
/// Pointers must be valid; `out_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn cs_verify(
    g: *const CsGraph,
    problem: *const c_char,
    lambda: *const c_char,
    vector: *const c_char,
    out_verdict: *mut bool,
    out_json: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        out_ptr(out_verdict, "out_verdict")?;
        let g = graph(g)?;
        let id: EigenproblemId = text(problem, "problem")?.parse()?;
        let lam: Rational = text(lambda, "lambda")?
            .trim()
            .parse()
            .map_err(|e: cutspectra::rational::ParseRationalError| Failure(CsStatus::Parse, e.to_string()))?;
        let x = text(vector, "vector")?
            .split_whitespace()
            .map(|t| t.parse::<Rational>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Failure(CsStatus::Parse, e.to_string()))?;
        let report = verify(id, g, &lam, &x)?;
        *out_verdict = report.verdict;
        if !out_json.is_null() {
            *out_json = to_c(serde_json::to_string(&report).expect("report serializes"));
        }
        Ok(())
    })
}

/// Dinkelbach iteration from `1_{0}`. `exact` selects exhaustive inner
/// steps; otherwise the seeded local search is used. Writes the trace as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_cut(
    g: *const CsGraph,
    problem: *const c_char,
    exact: bool,
    seed: u64,
    out_json: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        out_ptr(out_json, "out_json")?;
        let g = graph(g)?;
        let kind: RatioKind = text(problem, "problem")?.parse()?;
        let opts = SolveOptions {
            inner: if exact { InnerSolver::ExactEnum } else { InnerSolver::LocalFlip },
            seed,
            ..SolveOptions::default()
        };
        let trace =
            solve(&RatioProblem::registered(kind), g, &default_start(g.n()), &opts, &Caps::default())?;
        *out_json = to_c(serde_json::to_string(&trace).expect("report serializes"));
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn cs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn cs_status_name(status: CsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CsStatus::Ok => c"ok",
        CsStatus::NullPointer => c"null_pointer",
        CsStatus::InvalidUtf8 => c"invalid_utf8",
        CsStatus::Parse => c"parse",
        CsStatus::InvalidGraph => c"invalid_graph",
        CsStatus::TooLarge => c"too_large",
        CsStatus::UnknownProblem => c"unknown_problem",
        CsStatus::InvalidParameter => c"invalid_parameter",
        CsStatus::Domain => c"domain",
        CsStatus::Panic => c"panic",
    };
    s.as_ptr()
}
