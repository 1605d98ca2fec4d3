//! C interface to the diffusion auction mechanisms.
//!
//! Graphs and outcomes are opaque handles owned by the caller and released
//! with [`da_graph_free`] and [`da_outcome_free`]. Every fallible call returns
//! a [`DaStatus`]; on failure [`da_last_error`] describes the problem for the
//! calling thread. Amounts cross the boundary as numerator/denominator pairs.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diffusion_auction::io::parse_graph_str;
use diffusion_auction::mechanism::AuctionOutcome;
use diffusion_auction::{Graph, GraphError, MechanismError, MechanismKind, Rational};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidGraph = 4,
    UnknownMechanism = 5,
    WeightedGraph = 6,
    NotFound = 7,
    Internal = 8,
}

/// A validated graph.
pub struct DaGraph {
    graph: Graph,
}

/// A mechanism outcome at the truthful profile of the graph it was run on.
pub struct DaOutcome {
    graph: Graph,
    outcome: AuctionOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn fail(status: DaStatus, message: impl Into<String>) -> DaStatus {
    set_error(message);
    status
}

fn guarded(body: impl FnOnce() -> DaStatus) -> DaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == DaStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(DaStatus::Internal, "internal error"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, DaStatus> {
    if text.is_null() {
        return Err(fail(DaStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text).to_str().map_err(|_| fail(DaStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn split(value: Rational, numer: *mut i64, denom: *mut i64) -> DaStatus {
    if numer.is_null() || denom.is_null() {
        return fail(DaStatus::NullPointer, "null output pointer");
    }
    // SAFETY: both pointers were checked for null; the caller guarantees they are writable.
    unsafe {
        *numer = *value.numer();
        *denom = *value.denom();
    }
    DaStatus::Ok
}

fn give_string(text: String, out: *mut *mut c_char) -> DaStatus {
    match CString::new(text) {
        Ok(c) => {
            // SAFETY: `out` was checked for null by the caller of this helper.
            unsafe { *out = c.into_raw() };
            DaStatus::Ok
        }
        Err(_) => fail(DaStatus::Internal, "string contains a NUL byte"),
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn da_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses a graph document (JSON text) into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn da_graph_from_json(json: *const c_char, out: *mut *mut DaGraph) -> DaStatus {
    guarded(|| {
        if out.is_null() {
            return fail(DaStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_graph_str(text) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(DaGraph { graph }));
                DaStatus::Ok
            }
            Err(err @ GraphError::Parse { .. }) => fail(DaStatus::ParseError, err.to_string()),
            Err(err) => fail(DaStatus::InvalidGraph, err.to_string()),
        }
    })
}

/// # Safety
/// `graph` must be null or a handle from [`da_graph_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn da_graph_free(graph: *mut DaGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of nodes besides the seller.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn da_graph_node_count(graph: *const DaGraph, out: *mut usize) -> DaStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return fail(DaStatus::NullPointer, "null argument");
        }
        *out = (*graph).graph.node_count();
        DaStatus::Ok
    })
}

/// Runs `mechanism` (`vickrey`, `cdm-idm`, `cdm-beta` or `wdm`) at the
/// truthful profile. A market with no bidder yields a no-sale outcome.
///
/// # Safety
/// `graph` must be a live handle, `mechanism` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn da_run(graph: *const DaGraph, mechanism: *const c_char, out: *mut *mut DaOutcome) -> DaStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return fail(DaStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let name = match read_str(mechanism) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let kind: MechanismKind = match name.parse() {
            Ok(k) => k,
            Err(message) => return fail(DaStatus::UnknownMechanism, message),
        };
        let graph = &(*graph).graph;
        match kind.build().run_or_no_sale(graph, &graph.truthful_profile()) {
            Ok(outcome) => {
                *out = Box::into_raw(Box::new(DaOutcome { graph: graph.clone(), outcome }));
                DaStatus::Ok
            }
            Err(err @ MechanismError::WeightedGraph) => fail(DaStatus::WeightedGraph, err.to_string()),
            Err(err) => fail(DaStatus::Internal, err.to_string()),
        }
    })
}

/// # Safety
/// `outcome` must be null or a handle from [`da_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn da_outcome_free(outcome: *mut DaOutcome) {
    if !outcome.is_null() {
        drop(Box::from_raw(outcome));
    }
}

/// # Safety
/// `outcome` must be a live handle; `numer` and `denom` writable.
#[no_mangle]
pub unsafe extern "C" fn da_outcome_revenue(outcome: *const DaOutcome, numer: *mut i64, denom: *mut i64) -> DaStatus {
    guarded(|| match outcome.as_ref() {
        Some(o) => split(o.outcome.revenue, numer, denom),
        None => fail(DaStatus::NullPointer, "null outcome"),
    })
}

/// # Safety
/// `outcome` must be a live handle; `numer` and `denom` writable.
#[no_mangle]
pub unsafe extern "C" fn da_outcome_welfare(outcome: *const DaOutcome, numer: *mut i64, denom: *mut i64) -> DaStatus {
    guarded(|| match outcome.as_ref() {
        Some(o) => split(o.outcome.welfare, numer, denom),
        None => fail(DaStatus::NullPointer, "null outcome"),
    })
}

/// Payment of node `id`; nodes that pay nothing report zero.
///
/// # Safety
/// `outcome` must be a live handle, `id` a NUL-terminated string, `numer`
/// and `denom` writable.
#[no_mangle]
pub unsafe extern "C" fn da_outcome_payment(
    outcome: *const DaOutcome,
    id: *const c_char,
    numer: *mut i64,
    denom: *mut i64,
) -> DaStatus {
    guarded(|| {
        let Some(o) = outcome.as_ref() else { return fail(DaStatus::NullPointer, "null outcome") };
        let id = match read_str(id) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match o.graph.node(id) {
            Some(node) => split(o.outcome.payment(node), numer, denom),
            None => fail(DaStatus::NotFound, format!("no node `{id}`")),
        }
    })
}

/// Winner identifier as a new string, released with [`da_string_free`].
/// Returns `NotFound` when the item is not sold.
///
/// # Safety
/// `outcome` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn da_outcome_winner(outcome: *const DaOutcome, out: *mut *mut c_char) -> DaStatus {
    guarded(|| {
        let Some(o) = outcome.as_ref() else { return fail(DaStatus::NullPointer, "null outcome") };
        if out.is_null() {
            return fail(DaStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match o.outcome.winner {
            Some(w) => give_string(o.graph.id(w).to_string(), out),
            None => fail(DaStatus::NotFound, "the item is not sold"),
        }
    })
}

/// The outcome as a JSON document, released with [`da_string_free`].
///
/// # Safety
/// `outcome` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn da_outcome_to_json(outcome: *const DaOutcome, out: *mut *mut c_char) -> DaStatus {
    guarded(|| {
        let Some(o) = outcome.as_ref() else { return fail(DaStatus::NullPointer, "null outcome") };
        if out.is_null() {
            return fail(DaStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match serde_json::to_string(&o.outcome.to_record(&o.graph)) {
            Ok(text) => give_string(text, out),
            Err(err) => fail(DaStatus::Internal, err.to_string()),
        }
    })
}

/// # Safety
/// `text` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn da_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
