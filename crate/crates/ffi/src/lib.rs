//! C interface. Every call returns a [`WfStatus`]; results come back through
//! out-pointers, handles are opaque and must be released with their `_free`
//! function, and strings handed out must go back through [`wf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wreath_foulkes::chartable::ClassFunction;
use wreath_foulkes::combinatorics::Multipartition;
use wreath_foulkes::foulkes::{foulkes, foulkes_multiplicities};
use wreath_foulkes::verify::{self, Scope, Suite, VerifyReport};
use wreath_foulkes::wreath::{eulerian_row, group_order, rsk, ColoredPermutation};
use wreath_foulkes::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    BudgetExceeded = 4,
    /// A computed value disagreed with its combinatorial count.
    Mismatch = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    Panic = 8,
}

/// A wreath product W(r,n).
pub struct WfGroup {
    r: u32,
    n: usize,
}

/// An exact class function, values stored per conjugacy class.
pub struct WfCharacter(ClassFunction);

pub struct WfReport(VerifyReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: WfStatus, msg: impl Into<String>) -> WfStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> WfStatus {
    let status = match e {
        Error::BudgetExceeded { .. } => WfStatus::BudgetExceeded,
        Error::Parse(_) => WfStatus::Parse,
        Error::Mismatch(_) | Error::ConventionMismatch(_) => WfStatus::Mismatch,
        Error::NoSolution | Error::InvalidArgument(_) => WfStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into [`WfStatus::Panic`].
fn guard(f: impl FnOnce() -> WfStatus) -> WfStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(WfStatus::Panic, "internal panic"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, WfStatus> {
    if s.is_null() {
        return Err(fail(WfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(WfStatus::Parse, "string is not UTF-8"))
}

fn hand_out(s: String, out: *mut *mut c_char) -> WfStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before building the string
            unsafe { *out = c.into_raw() };
            WfStatus::Ok
        }
        Err(_) => fail(WfStatus::InvalidArgument, "output contains a nul byte"),
    }
}

/// Message for the last failing call on this thread, or null. Owned by the
/// library and valid until the next failing call.
#[no_mangle]
pub extern "C" fn wf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_group_new(r: u32, n: usize, out: *mut *mut WfGroup) -> WfStatus {
    if out.is_null() {
        return fail(WfStatus::NullPointer, "null out-pointer");
    }
    if r == 0 {
        return fail(WfStatus::InvalidArgument, "r must be at least 1");
    }
    *out = Box::into_raw(Box::new(WfGroup { r, n }));
    WfStatus::Ok
}

/// # Safety
/// `group` must be null or a handle from [`wf_group_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wf_group_free(group: *mut WfGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// r^n·n!, or [`WfStatus::Overflow`] past 64 bits.
///
/// # Safety
/// `group` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_group_order(group: *const WfGroup, out: *mut u64) -> WfStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return fail(WfStatus::NullPointer, "null argument");
    };
    guard(|| match u64::try_from(group_order(g.r, g.n)) {
        Ok(v) => {
            *out = v;
            WfStatus::Ok
        }
        Err(_) => fail(WfStatus::Overflow, "group order exceeds 64 bits"),
    })
}

/// Writes E(r,n,0..n) into `buf`. `written` receives n+1 even when the
/// buffer is too small, so callers can size a retry.
///
/// # Safety
/// `group` must be a live handle, `buf` valid for `len` writes, `written` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_eulerian(
    group: *const WfGroup,
    buf: *mut u64,
    len: usize,
    written: *mut usize,
) -> WfStatus {
    let (Some(g), false) = (group.as_ref(), written.is_null()) else {
        return fail(WfStatus::NullPointer, "null argument");
    };
    guard(|| {
        let row = eulerian_row(g.r, g.n);
        *written = row.len();
        if len < row.len() || buf.is_null() {
            return fail(WfStatus::BufferTooSmall, format!("need {} slots", row.len()));
        }
        for (i, v) in row.iter().enumerate() {
            let Ok(v) = u64::try_from(*v) else {
                return fail(WfStatus::Overflow, "descent count exceeds 64 bits");
            };
            *buf.add(i) = v;
        }
        WfStatus::Ok
    })
}

/// The Foulkes character φ_k of the group.
///
/// # Safety
/// `group` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_foulkes_character(group: *const WfGroup, k: usize, out: *mut *mut WfCharacter) -> WfStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return fail(WfStatus::NullPointer, "null argument");
    };
    if k > g.n {
        return fail(WfStatus::InvalidArgument, format!("k = {k} exceeds n = {}", g.n));
    }
    guard(|| {
        *out = Box::into_raw(Box::new(WfCharacter(foulkes(g.r, g.n, k).to_class_function())));
        WfStatus::Ok
    })
}

/// # Safety
/// `ch` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wf_character_free(ch: *mut WfCharacter) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// JSON `{r, n, classes, values}`; each value is a list of rational
/// coefficient strings in powers of a primitive r-th root of unity.
///
/// # Safety
/// `ch` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_character_json(ch: *const WfCharacter, out: *mut *mut c_char) -> WfStatus {
    let (Some(ch), false) = (ch.as_ref(), out.is_null()) else {
        return fail(WfStatus::NullPointer, "null argument");
    };
    guard(|| hand_out(serde_json::to_string(&ch.0).expect("class functions serialize"), out))
}

/// Multiplicity of the irreducible labelled `label` (e.g. "[[1],[1]]") in φ_k.
///
/// # Safety
/// `group` must be a live handle, `label` a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_foulkes_multiplicity(
    group: *const WfGroup,
    label: *const c_char,
    k: usize,
    out: *mut u64,
) -> WfStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return fail(WfStatus::NullPointer, "null argument");
    };
    let label = match text(label) {
        Ok(s) => s,
        Err(status) => return status,
    };
    guard(|| {
        let label: Multipartition = match label.parse() {
            Ok(l) => l,
            Err(e) => return from_error(e),
        };
        if label.r() != g.r as usize || label.size() != g.n {
            return fail(
                WfStatus::InvalidArgument,
                format!("{label} does not label an irreducible of W({},{})", g.r, g.n),
            );
        }
        if k > g.n {
            return fail(WfStatus::InvalidArgument, format!("k = {k} exceeds n = {}", g.n));
        }
        match foulkes_multiplicities(g.r, g.n, k) {
            Ok(rows) => {
                *out = rows.into_iter().find(|(l, _)| *l == label).map_or(0, |(_, m)| m);
                WfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Colored RSK of a word such as "2^1 1^0"; JSON `{insertion, recording}`.
///
/// # Safety
/// `word` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_rsk_json(r: u32, word: *const c_char, out: *mut *mut c_char) -> WfStatus {
    if out.is_null() {
        return fail(WfStatus::NullPointer, "null out-pointer");
    }
    let word = match text(word) {
        Ok(s) => s,
        Err(status) => return status,
    };
    guard(|| match ColoredPermutation::parse(r, word) {
        Ok(w) => {
            let (s, t) = rsk(&w);
            hand_out(serde_json::json!({"insertion": s, "recording": t}).to_string(), out)
        }
        Err(e) => from_error(e),
    })
}

/// Runs identity suites (comma-separated, or "all"). With `whole_grid` set
/// the built-in grid is used and `r`, `n` are ignored.
///
/// # Safety
/// `suites` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_verify(
    r: u32,
    n: usize,
    whole_grid: bool,
    suites: *const c_char,
    seed: u64,
    basis_budget: u64,
    out: *mut *mut WfReport,
) -> WfStatus {
    if out.is_null() {
        return fail(WfStatus::NullPointer, "null out-pointer");
    }
    let suites = match text(suites).map(Suite::parse_list) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => return from_error(e),
        Err(status) => return status,
    };
    if !whole_grid && r == 0 {
        return fail(WfStatus::InvalidArgument, "r must be at least 1");
    }
    let scope = if whole_grid { Scope::Grid } else { Scope::Cell { r, n } };
    guard(|| match verify::run(scope, &suites, seed, basis_budget as u128) {
        Ok(report) => {
            *out = Box::into_raw(Box::new(WfReport(report)));
            WfStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `report` must be null or a handle from [`wf_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wf_report_free(report: *mut WfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of FAIL entries.
///
/// # Safety
/// `report` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_report_failures(report: *const WfReport, out: *mut usize) -> WfStatus {
    let (Some(rep), false) = (report.as_ref(), out.is_null()) else {
        return fail(WfStatus::NullPointer, "null argument");
    };
    *out = rep.0.failures().count();
    WfStatus::Ok
}

/// The report in the same JSON schema the command line prints.
///
/// # Safety
/// `report` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wf_report_json(report: *const WfReport, out: *mut *mut c_char) -> WfStatus {
    let (Some(rep), false) = (report.as_ref(), out.is_null()) else {
        return fail(WfStatus::NullPointer, "null argument");
    };
    guard(|| hand_out(serde_json::to_string(&rep.0).expect("reports serialize"), out))
}
