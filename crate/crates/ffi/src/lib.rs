//! C interface over opaque graph handles.
//!
//! Every function returns a [`MoyStatus`]. On failure the message is available
//! from [`moy_last_error`] on the same thread. Strings handed out must be
//! released with [`moy_string_free`], graphs with [`moy_graph_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::os::raw::c_int;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use moy::crowell::{compare, PdCode};
use moy::spanning::SpanningModel;
use moy::{Error, Method, PlaneGraph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Violation = 3,
    Panic = 4,
}

pub const MOY_METHOD_STATESUM: c_int = 0;
pub const MOY_METHOD_SPANNING: c_int = 1;
pub const MOY_METHOD_MATRIXTREE: c_int = 2;

/// Opaque plane graph.
pub struct MoyGraph {
    inner: PlaneGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> MoyStatus {
    let status = if e.is_violation() { MoyStatus::Violation } else { MoyStatus::InvalidInput };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> MoyStatus) -> MoyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            MoyStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MoyStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(MoyStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        MoyStatus::InvalidInput
    })
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

macro_rules! null_check {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)).into());
            return MoyStatus::NullPointer;
        })+
    };
}

/// Message of the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn moy_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a graph file.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moy_graph_from_json(json: *const c_char, out: *mut *mut MoyGraph) -> MoyStatus {
    guard(|| {
        null_check!(out);
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match PlaneGraph::from_json(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(MoyGraph { inner: g }));
                MoyStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `graph` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn moy_graph_free(graph: *mut MoyGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Serializes a graph; free the result with `moy_string_free`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moy_graph_to_json(graph: *const MoyGraph, out: *mut *mut c_char) -> MoyStatus {
    guard(|| {
        null_check!(graph, out);
        *out = give_string((*graph).inner.to_json());
        MoyStatus::Ok
    })
}

/// Writes whether the graph passes every invariant. A failing graph is not an error;
/// the first failed check is left in `moy_last_error`.
///
/// # Safety
/// `graph` must be a live handle and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moy_graph_validate(graph: *const MoyGraph, valid: *mut bool) -> MoyStatus {
    guard(|| {
        null_check!(graph, valid);
        let report = (*graph).inner.validate();
        *valid = report.is_valid();
        if let Some(c) = report.first_failure() {
            set_error(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
        }
        MoyStatus::Ok
    })
}

/// Canonical Alexander polynomial as text, e.g. `1 + 2*t + t^2`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moy_alexander(graph: *const MoyGraph, method: c_int, out: *mut *mut c_char) -> MoyStatus {
    guard(|| {
        null_check!(graph, out);
        let m = match method {
            MOY_METHOD_STATESUM => Method::StateSum,
            MOY_METHOD_SPANNING => Method::Spanning,
            MOY_METHOD_MATRIXTREE => Method::MatrixTree,
            other => {
                set_error(format!("unknown method {other}"));
                return MoyStatus::InvalidInput;
            }
        };
        match moy::alexander(&(*graph).inner, m) {
            Ok(p) => {
                *out = give_string(p.to_string());
                MoyStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of spanning trees after parallel replacement.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moy_tree_count(graph: *const MoyGraph, out: *mut u64) -> MoyStatus {
    guard(|| {
        null_check!(graph, out);
        let r = moy::spanning_ready(&(*graph).inner)
            .and_then(|g| SpanningModel::new(&g)?.enumerate_trees().map(|t| t.len() as u64));
        match r {
            Ok(n) => {
                *out = n;
                MoyStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Deterministic random graph with `size` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moy_gen(seed: u64, size: usize, out: *mut *mut MoyGraph) -> MoyStatus {
    guard(|| {
        null_check!(out);
        match moy::generate(seed, size) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(MoyGraph { inner: g }));
                MoyStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Compares the Crowell polynomial of a PD code with that of its singular projection.
/// `crowell` and `singular` may be null when the polynomials are not wanted.
///
/// # Safety
/// `pd` must be a nul-terminated string, `equal` a valid pointer, and the
/// string outputs valid or null.
#[no_mangle]
pub unsafe extern "C" fn moy_pd_compare(
    pd: *const c_char,
    equal: *mut bool,
    crowell: *mut *mut c_char,
    singular: *mut *mut c_char,
) -> MoyStatus {
    guard(|| {
        null_check!(equal);
        let text = match read_str(pd) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match PdCode::parse(text).and_then(|p| compare(&p)) {
            Ok(c) => {
                *equal = c.equal;
                if !crowell.is_null() {
                    *crowell = give_string(c.crowell.to_string());
                }
                if !singular.is_null() {
                    *singular = give_string(c.singular.to_string());
                }
                MoyStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn moy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
