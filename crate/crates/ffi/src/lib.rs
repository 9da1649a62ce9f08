//! C ABI over `superhopf`.
//!
//! Records cross the boundary as opaque [`ShRecord`] handles. Every fallible call
//! returns an [`ShStatus`]; the message of the last failure on the calling thread
//! is available from [`sh_last_error`]. Strings handed out by the library must be
//! released with [`sh_string_free`], records with [`sh_record_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use superhopf::antipode::{solve_antipode, AntipodeStatus};
use superhopf::axioms::is_superbialgebra;
use superhopf::catalog::catalog;
use superhopf::classify::{find_isomorphism, fingerprint, IsoStatus};
use superhopf::constructions::evaluate;
use superhopf::structures::{deserialize, serialize, Document};
use superhopf::{Error, SuperBialgebraData};

/// Opaque record handle.
pub struct ShRecord {
    data: SuperBialgebraData,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownId = 3,
    Parse = 4,
    Validation = 5,
    Unsupported = 6,
    Shape = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShAntipode {
    Found = 0,
    NotFound = 1,
    NonUnique = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShIso {
    Iso = 0,
    NonIso = 1,
    Undetermined = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ShStatus {
    match e {
        Error::UnknownId(_) | Error::UnknownName(_) => ShStatus::UnknownId,
        Error::Parse(_) | Error::MalformedScalar(_) | Error::ZeroDenominator => ShStatus::Parse,
        Error::Validation(_) | Error::MissingStructure(_) => ShStatus::Validation,
        Error::Unsupported(_) | Error::UnsupportedDegree(_) | Error::GeneratingSet(_) => ShStatus::Unsupported,
        Error::Shape(_) | Error::Arity { .. } => ShStatus::Shape,
        _ => ShStatus::Internal,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), ShStatus>) -> ShStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ShStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside superhopf");
            ShStatus::Panic
        }
    }
}

fn fail(e: Error) -> ShStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ShStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(ShStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        ShStatus::InvalidUtf8
    })
}

unsafe fn record<'a>(p: *const ShRecord) -> Result<&'a SuperBialgebraData, ShStatus> {
    p.as_ref().map(|r| &r.data).ok_or_else(|| {
        set_error("null record handle");
        ShStatus::NullPointer
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), ShStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(ShStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), ShStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a nul byte");
        ShStatus::Internal
    })?;
    write_out(out, c.into_raw())
}

unsafe fn write_record(out: *mut *mut ShRecord, data: SuperBialgebraData) -> Result<(), ShStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(ShStatus::NullPointer);
    }
    out.write(Box::into_raw(Box::new(ShRecord { data })));
    Ok(())
}

/// Message of the last failure on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn sh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sh_record_free(r: *mut ShRecord) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of records in the bundled catalog.
#[no_mangle]
pub extern "C" fn sh_catalog_len() -> usize {
    catch_unwind(|| catalog().entries().len()).unwrap_or(0)
}

/// Id of catalog record `index`, as a string owned by the caller.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sh_catalog_id(index: usize, out: *mut *mut c_char) -> ShStatus {
    guard(|| {
        let entry = catalog().entries().get(index).ok_or_else(|| {
            set_error(format!("catalog index {index} out of range"));
            ShStatus::UnknownId
        })?;
        write_string(out, entry.id().to_string())
    })
}

/// Resolves a catalog id, alias, named family, or an expression such as `dual(H2)`.
///
/// # Safety
/// `expr` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sh_record_resolve(expr: *const c_char, out: *mut *mut ShRecord) -> ShStatus {
    guard(|| {
        let expr = read_str(expr)?;
        let data = evaluate(expr, catalog()).map_err(fail)?;
        write_record(out, data)
    })
}

/// Parses a record document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sh_record_from_json(json: *const c_char, out: *mut *mut ShRecord) -> ShStatus {
    guard(|| {
        let text = read_str(json)?;
        let data = Document::from_json(text).and_then(|d| deserialize(&d)).map_err(fail)?;
        write_record(out, data)
    })
}

/// Serializes a record as a document.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sh_record_to_json(r: *const ShRecord, out: *mut *mut c_char) -> ShStatus {
    guard(|| {
        let data = record(r)?;
        write_string(out, serialize(data).to_json())
    })
}

/// Even and odd dimensions of the underlying superspace.
///
/// # Safety
/// `r` must be a live handle; `n0` and `n1` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sh_record_dims(r: *const ShRecord, n0: *mut usize, n1: *mut usize) -> ShStatus {
    guard(|| {
        let data = record(r)?;
        write_out(n0, data.space.n0)?;
        write_out(n1, data.space.n1)
    })
}

/// Whether every superbialgebra axiom holds.
///
/// # Safety
/// `r` must be a live handle; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sh_verify(r: *const ShRecord, holds: *mut bool) -> ShStatus {
    guard(|| {
        let data = record(r)?;
        write_out(holds, is_superbialgebra(data))
    })
}

/// Solves for the antipode. On `Found`, `antipode_json` (if non-NULL) receives the images of the basis.
///
/// # Safety
/// `r` must be a live handle; `status` must be writable; `antipode_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn sh_antipode(r: *const ShRecord, status: *mut ShAntipode, antipode_json: *mut *mut c_char) -> ShStatus {
    guard(|| {
        let data = record(r)?;
        let result = solve_antipode(data).map_err(fail)?;
        let s = match &result.status {
            AntipodeStatus::Found(_) => ShAntipode::Found,
            AntipodeStatus::NotFound(_) => ShAntipode::NotFound,
            AntipodeStatus::NonUnique(_) => ShAntipode::NonUnique,
        };
        write_out(status, s)?;
        if let (Some(map), false) = (result.status.antipode(), antipode_json.is_null()) {
            let images: Vec<String> = data.space.basis().iter().map(|&b| map.image(b).to_string()).collect();
            write_string(antipode_json, serde_json::to_string(&images).expect("strings serialize"))?;
        }
        Ok(())
    })
}

/// The fingerprint as JSON.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sh_fingerprint_json(r: *const ShRecord, out: *mut *mut c_char) -> ShStatus {
    guard(|| {
        let data = record(r)?;
        let fp = fingerprint(data).map_err(fail)?;
        write_string(out, serde_json::to_string(&fp).expect("fingerprint serializes"))
    })
}

/// Isomorphism search. `detail_json` (if non-NULL) receives the map or the separating invariant.
///
/// # Safety
/// `a` and `b` must be live handles; `result` must be writable; `detail_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn sh_find_isomorphism(
    a: *const ShRecord,
    b: *const ShRecord,
    result: *mut ShIso,
    detail_json: *mut *mut c_char,
) -> ShStatus {
    guard(|| {
        let (d1, d2) = (record(a)?, record(b)?);
        let iso = find_isomorphism(d1, d2).map_err(fail)?;
        let r = match iso.status {
            IsoStatus::Iso(_) => ShIso::Iso,
            IsoStatus::NonIso(_) => ShIso::NonIso,
            IsoStatus::Undetermined => ShIso::Undetermined,
        };
        write_out(result, r)?;
        if !detail_json.is_null() {
            write_string(detail_json, iso.to_json().to_string())?;
        }
        Ok(())
    })
}
