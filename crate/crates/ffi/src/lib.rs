//! C interface to the gamma-groups engine.
//!
//! Groups cross the boundary as opaque `GgGroup` handles. Every fallible
//! call returns a `GgStatus`; on failure a description of the last error on
//! the calling thread is available from `gg_last_error_message`. Strings
//! handed out by this library must be released with `gg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gamma_groups::catalog::{catalog_get, profile, GeneratorFile, ProfileOptions};
use gamma_groups::group::{is_isomorphic, DEFAULT_CAP};
use gamma_groups::report::run_claims;
use gamma_groups::{Error, MatrixGroup};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownName = 3,
    ParseError = 4,
    CapExceeded = 5,
    UnknownClaim = 6,
    Internal = 7,
}

/// Opaque group handle.
pub struct GgGroup {
    inner: MatrixGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: GgStatus, msg: impl Into<String>) -> GgStatus {
    set_error(msg);
    status
}

fn status_of(err: &Error) -> GgStatus {
    match err {
        Error::UnknownName(_) => GgStatus::UnknownName,
        Error::UnknownClaim(_) => GgStatus::UnknownClaim,
        Error::Parse(_) | Error::Json(_) | Error::Data { .. } => GgStatus::ParseError,
        Error::Group(gamma_groups::error::GroupError::CapExceeded { .. }) => GgStatus::CapExceeded,
        _ => GgStatus::Internal,
    }
}

fn from_error(err: Error) -> GgStatus {
    let status = status_of(&err);
    fail(status, err.to_string())
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, GgStatus> {
    if s.is_null() {
        return Err(fail(GgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(GgStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn hand_out_group(group: MatrixGroup, out: *mut *mut GgGroup) -> GgStatus {
    if out.is_null() {
        return fail(GgStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(GgGroup { inner: group }));
    GgStatus::Ok
}

/// # Safety
/// `out` must be null or valid for a pointer write.
unsafe fn hand_out_string(text: String, out: *mut *mut c_char) -> GgStatus {
    if out.is_null() {
        return fail(GgStatus::NullPointer, "null output pointer");
    }
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            GgStatus::Ok
        }
        Err(_) => fail(GgStatus::Internal, "output contains a nul byte"),
    }
}

/// Look up a catalog group by name or alias.
///
/// # Safety
/// `name` must be a valid nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gg_catalog_group(name: *const c_char, out: *mut *mut GgGroup) -> GgStatus {
    let name = match read_str(name) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match catalog_get(name) {
        Ok((g, _)) => hand_out_group(g, out),
        Err(e) => from_error(e),
    }
}

/// Close the generators of a JSON generator file (`{"name", "dimension",
/// "generators": [...]}`) into a group of at most `cap` elements; `cap` 0
/// selects the default cap.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gg_group_from_json(
    json: *const c_char,
    cap: usize,
    out: *mut *mut GgGroup,
) -> GgStatus {
    let text = match read_str(json) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let cap = if cap == 0 { DEFAULT_CAP } else { cap };
    match GeneratorFile::from_json(text).and_then(|f| f.close(cap)) {
        Ok(g) => hand_out_group(g, out),
        Err(e) => from_error(e),
    }
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `group` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gg_group_free(group: *mut GgGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gg_group_order(group: *const GgGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.order())
}

/// Matrix dimension, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gg_group_dimension(group: *const GgGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.dim())
}

/// Number of conjugacy classes, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gg_group_class_count(group: *const GgGroup) -> usize {
    group
        .as_ref()
        .map_or(0, |g| g.inner.conjugacy_classes().len())
}

/// Order of the center, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gg_group_center_order(group: *const GgGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.center().order())
}

/// Write 1 to `out` when the groups are isomorphic (with a verified
/// certificate), 0 otherwise.
///
/// # Safety
/// `a` and `b` must be live handles, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gg_group_is_isomorphic(
    a: *const GgGroup,
    b: *const GgGroup,
    out: *mut i32,
) -> GgStatus {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return fail(GgStatus::NullPointer, "null group handle");
    };
    if out.is_null() {
        return fail(GgStatus::NullPointer, "null output pointer");
    }
    let cert = is_isomorphic(&a.inner, &b.inner);
    *out = i32::from(cert.is_some_and(|c| c.verified));
    GgStatus::Ok
}

/// Full structural profile of the group as a JSON object.
///
/// # Safety
/// `group` must be a live handle, `out` valid for writes; free the result
/// with `gg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn gg_analyze_json(group: *const GgGroup, out: *mut *mut c_char) -> GgStatus {
    let Some(g) = group.as_ref() else {
        return fail(GgStatus::NullPointer, "null group handle");
    };
    let p = profile(&g.inner, &ProfileOptions::default());
    match serde_json::to_string(&p) {
        Ok(text) => hand_out_string(text, out),
        Err(e) => fail(GgStatus::Internal, e.to_string()),
    }
}

/// Run the claims whose ids match `filter` (null runs all). Writes the
/// results as a JSON array to `out` and the number of failing claims to
/// `failures`.
///
/// # Safety
/// `filter` must be null or a valid nul-terminated string; `out` and
/// `failures` valid for writes; free the result with `gg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn gg_verify_claims(
    filter: *const c_char,
    out: *mut *mut c_char,
    failures: *mut usize,
) -> GgStatus {
    let filter = if filter.is_null() {
        None
    } else {
        match read_str(filter) {
            Ok(s) => Some(s),
            Err(st) => return st,
        }
    };
    if failures.is_null() {
        return fail(GgStatus::NullPointer, "null output pointer");
    }
    let results = match run_claims(filter, false) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    *failures = results
        .iter()
        .filter(|c| c.status != gamma_groups::report::Status::Pass)
        .count();
    match serde_json::to_string(&results) {
        Ok(text) => hand_out_string(text, out),
        Err(e) => fail(GgStatus::Internal, e.to_string()),
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gg_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version contains a nul byte"),
        };
    VERSION.as_ptr()
}
