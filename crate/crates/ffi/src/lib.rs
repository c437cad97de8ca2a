//! C ABI over `laplace-core`.
//!
//! Graphs and results are opaque handles created and destroyed through this
//! API. Every fallible call returns a [`LapStatus`]; on failure a message is
//! available from [`lap_last_error`] on the same thread. Strings returned to
//! the caller are owned and must be released with [`lap_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::{Arc, Mutex};

use laplace_core::cli::parse_graph;
use laplace_core::graph::{validate_oracle, GraphOracle, GraphView};
use laplace_core::operator::{LambdaField, TargetFunction};
use laplace_core::rational::format_rational;
use laplace_core::report::{CoherentJson, SolveJson};
use laplace_core::solver::{
    coherent_solution, max_principle_certificate, solve_on_ball, SolveReport, SolverError,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationFailed = 4,
    /// Singular truncated operator on a ball that exhausts a finite graph.
    SingularFinite = 5,
    /// Singular truncated operator on an unsaturated ball.
    SingularAnomaly = 6,
    NotStabilized = 7,
    SolverError = 8,
    Internal = 9,
}

/// Opaque graph handle.
pub struct LapGraph {
    name: String,
    oracle: Arc<dyn GraphOracle>,
    view: Mutex<GraphView>,
}

/// Opaque solve result.
pub struct LapReport {
    labels: Vec<CString>,
    values: Vec<CString>,
    residual_zero: bool,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: LapStatus, msg: impl Into<String>) -> LapStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> LapStatus) -> LapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(LapStatus::Internal, "internal panic"),
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LapStatus> {
    if s.is_null() {
        return Err(fail(LapStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(LapStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn owned_cstring(s: String) -> CString {
    CString::new(s).unwrap_or_default()
}

fn solver_status(e: &SolverError) -> LapStatus {
    match e {
        SolverError::SingularSystem {
            saturated: true, ..
        } => LapStatus::SingularFinite,
        SolverError::SingularSystem { .. } => LapStatus::SingularAnomaly,
        SolverError::NotStabilized { .. } => LapStatus::NotStabilized,
        SolverError::Graph(_) => LapStatus::ValidationFailed,
        SolverError::BadArguments(_) => LapStatus::ParseError,
        _ => LapStatus::SolverError,
    }
}

impl LapGraph {
    fn validate(&self, radius: usize) -> Result<(), LapStatus> {
        match validate_oracle(self.oracle.as_ref(), radius) {
            Ok(r) if r.passes() => Ok(()),
            Ok(r) => Err(fail(
                LapStatus::ValidationFailed,
                format!(
                    "{} violation(s), first: {}",
                    r.violations.len(),
                    r.violations[0].detail
                ),
            )),
            Err(e) => Err(fail(LapStatus::ValidationFailed, e.to_string())),
        }
    }
}

fn parse_inputs(target: &str, lambda: &str) -> Result<(TargetFunction, LambdaField), LapStatus> {
    let t = target
        .parse::<TargetFunction>()
        .map_err(|e| fail(LapStatus::ParseError, e.to_string()))?;
    let l = lambda
        .parse::<LambdaField>()
        .map_err(|e| fail(LapStatus::ParseError, e.to_string()))?;
    Ok((t, l))
}

fn make_report(r: &SolveReport, json: String) -> Box<LapReport> {
    let f = &r.solution;
    Box::new(LapReport {
        labels: f
            .ball()
            .vertices()
            .iter()
            .map(|v| owned_cstring(v.label.clone()))
            .collect(),
        values: f
            .values()
            .iter()
            .map(|v| owned_cstring(format_rational(v)))
            .collect(),
        residual_zero: r.residual_check,
        json: owned_cstring(json),
    })
}

/// Message of the last failed call on this thread. Valid until the next
/// call into this library on the same thread; never null.
#[no_mangle]
pub extern "C" fn lap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a graph from a family shorthand (`"z"`, `"tree3"`, …) or a JSON
/// description.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lap_graph_new(spec: *const c_char, out: *mut *mut LapGraph) -> LapStatus {
    guard(|| {
        if out.is_null() {
            return fail(LapStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let spec = match read_str(spec) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_graph(spec) {
            Ok((oracle, name)) => {
                let view = Mutex::new(GraphView::new(oracle.clone()));
                *out = Box::into_raw(Box::new(LapGraph { name, oracle, view }));
                LapStatus::Ok
            }
            Err(e) => fail(LapStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `graph` must be null or a handle from [`lap_graph_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lap_graph_free(graph: *mut LapGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// `|B_n|`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lap_graph_ball_size(
    graph: *const LapGraph,
    n: usize,
    out: *mut usize,
) -> LapStatus {
    guard(|| {
        let (Some(graph), false) = (graph.as_ref(), out.is_null()) else {
            return fail(LapStatus::NullPointer, "null argument");
        };
        let mut view = graph.view.lock().unwrap_or_else(|p| p.into_inner());
        match view.ball_size(n) {
            Ok(size) => {
                *out = size;
                LapStatus::Ok
            }
            Err(e) => fail(LapStatus::ValidationFailed, e.to_string()),
        }
    })
}

/// Ball solve at radius `n`. `target` and `lambda` use the CLI text forms
/// (`"delta"`, JSON, `"0"`, `"distance"`, `"p/q"`).
///
/// # Safety
/// Pointers must be valid; `out` receives a handle to free with [`lap_report_free`].
#[no_mangle]
pub unsafe extern "C" fn lap_solve_on_ball(
    graph: *const LapGraph,
    target: *const c_char,
    n: usize,
    lambda: *const c_char,
    out: *mut *mut LapReport,
) -> LapStatus {
    guard(|| {
        let (Some(graph), false) = (graph.as_ref(), out.is_null()) else {
            return fail(LapStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let (target, lambda) = match read_str(target)
            .and_then(|t| read_str(lambda).map(|l| (t, l)))
            .and_then(|(t, l)| parse_inputs(t, l))
        {
            Ok(v) => v,
            Err(status) => return status,
        };
        if let Err(status) = graph.validate(n + 1) {
            return status;
        }
        let mut view = graph.view.lock().unwrap_or_else(|p| p.into_inner());
        match solve_on_ball(&mut view, &target, n, &lambda) {
            Ok(r) => {
                let json = SolveJson::from_report(&graph.name, &lambda.describe(), &r);
                let text = serde_json::to_string(&json).unwrap_or_default();
                *out = Box::into_raw(make_report(&r, text));
                LapStatus::Ok
            }
            Err(e) => fail(solver_status(&e), e.to_string()),
        }
    })
}

/// Coherent solution `x_0, …, x_depth`; the report holds `x_depth` on
/// `B_{depth+1}` and the full family in its JSON.
///
/// # Safety
/// Pointers must be valid; `out` receives a handle to free with [`lap_report_free`].
#[no_mangle]
pub unsafe extern "C" fn lap_coherent_solution(
    graph: *const LapGraph,
    target: *const c_char,
    depth: usize,
    max_m: usize,
    window: usize,
    lambda: *const c_char,
    out: *mut *mut LapReport,
) -> LapStatus {
    guard(|| {
        let (Some(graph), false) = (graph.as_ref(), out.is_null()) else {
            return fail(LapStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let (target, lambda) = match read_str(target)
            .and_then(|t| read_str(lambda).map(|l| (t, l)))
            .and_then(|(t, l)| parse_inputs(t, l))
        {
            Ok(v) => v,
            Err(status) => return status,
        };
        if let Err(status) = graph.validate(max_m.max(depth) + 1) {
            return status;
        }
        let mut view = graph.view.lock().unwrap_or_else(|p| p.into_inner());
        match coherent_solution(&mut view, &target, depth, max_m, window, &lambda) {
            Ok(sol) => {
                let json = CoherentJson::new(&graph.name, &lambda.describe(), &sol);
                let text = serde_json::to_string(&json).unwrap_or_default();
                let mut report = make_report(&sol.report, text);
                report.residual_zero = sol.report.residual_check && sol.is_coherent();
                *out = Box::into_raw(report);
                LapStatus::Ok
            }
            Err(e) => fail(solver_status(&e), e.to_string()),
        }
    })
}

/// Maximum-principle certificate at radius `n`. `determinant` receives an
/// owned `"p/q"` string.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn lap_certificate(
    graph: *const LapGraph,
    n: usize,
    lambda: *const c_char,
    strict_inclusion: *mut bool,
    determinant: *mut *mut c_char,
) -> LapStatus {
    guard(|| {
        let Some(graph) = graph.as_ref() else {
            return fail(LapStatus::NullPointer, "null graph");
        };
        if strict_inclusion.is_null() || determinant.is_null() {
            return fail(LapStatus::NullPointer, "null output pointer");
        }
        let lambda = match read_str(lambda).and_then(|l| {
            l.parse::<LambdaField>()
                .map_err(|e| fail(LapStatus::ParseError, e.to_string()))
        }) {
            Ok(l) => l,
            Err(status) => return status,
        };
        let mut view = graph.view.lock().unwrap_or_else(|p| p.into_inner());
        match max_principle_certificate(&mut view, n, &lambda) {
            Ok(c) => {
                *strict_inclusion = c.strict_inclusion;
                *determinant = owned_cstring(format_rational(&c.determinant)).into_raw();
                LapStatus::Ok
            }
            Err(e) => fail(solver_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lap_report_residual_zero(report: *const LapReport) -> bool {
    report.as_ref().is_some_and(|r| r.residual_zero)
}

/// Number of vertices in the solution's ball.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lap_report_len(report: *const LapReport) -> usize {
    report.as_ref().map_or(0, |r| r.values.len())
}

/// Borrowed label of vertex `i`; null when out of range. Valid while the report lives.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lap_report_label(report: *const LapReport, i: usize) -> *const c_char {
    report
        .as_ref()
        .and_then(|r| r.labels.get(i))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Borrowed `"p/q"` value at vertex `i`; null when out of range.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lap_report_value(report: *const LapReport, i: usize) -> *const c_char {
    report
        .as_ref()
        .and_then(|r| r.values.get(i))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Borrowed JSON report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lap_report_json(report: *const LapReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lap_report_free(report: *mut LapReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
