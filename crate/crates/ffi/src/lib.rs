//! C ABI over the exangulate engine.
//!
//! Every function returns an [`ExgStatus`]. On failure the message is kept
//! per thread and read with [`exg_last_error`]. Strings handed out by the
//! library are freed with [`exg_string_free`], sessions with
//! [`exg_session_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use exangulate::cli::{parse_input, Session, SessionOptions};
use exangulate::localization::to_json;
use exangulate::Error;

/// Seed used by the decomposition search unless another one is given.
pub const EXG_DEFAULT_SEED: u64 = 0x5eed_2024;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The session text is not well-formed.
    Syntax = 3,
    /// The session text is well-formed but inconsistent.
    Semantic = 4,
    /// A computation could not be completed within its bounds.
    Computation = 5,
    Internal = 6,
    Panic = 7,
}

/// A parsed and built category. Opaque to C.
pub struct ExgSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ExgStatus {
    match e {
        Error::Syntax { .. } => ExgStatus::Syntax,
        Error::Semantic(_) | Error::InvalidInput(_) => ExgStatus::Semantic,
        Error::Internal(_) => ExgStatus::Internal,
        _ => ExgStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), ExgStatus>) -> ExgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside the library");
            ExgStatus::Panic
        }
    }
}

fn fail(e: Error) -> ExgStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ExgStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(ExgStatus::NullPointer);
    }
    // SAFETY: the caller passes a NUL-terminated string valid for the call.
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        ExgStatus::InvalidUtf8
    })
}

unsafe fn session<'a>(s: *const ExgSession) -> Result<&'a Session, ExgStatus> {
    if s.is_null() {
        set_error("null session");
        return Err(ExgStatus::NullPointer);
    }
    // SAFETY: non-null sessions come from `exg_session_new` and are live.
    Ok(unsafe { &(*s).inner })
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), ExgStatus> {
    let c = CString::new(s).map_err(|_| fail(Error::Internal("report contains a NUL byte".into())))?;
    // SAFETY: `out` was checked to be non-null by the caller.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Parses a session file's text and builds the category.
///
/// `prime` and `multiplicity_bound` override the file when nonzero.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exg_session_new(text: *const c_char, prime: u32, multiplicity_bound: usize, seed: u64, out: *mut *mut ExgSession) -> ExgStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(ExgStatus::NullPointer);
        }
        // SAFETY: forwarded caller contract.
        let text = unsafe { read_str(text) }?;
        let opts = SessionOptions {
            prime: (prime != 0).then_some(prime),
            multiplicity: (multiplicity_bound != 0).then_some(multiplicity_bound),
            seed,
        };
        let s = parse_input(text).and_then(|cfg| Session::new(cfg, opts)).map_err(fail)?;
        // SAFETY: `out` is non-null.
        unsafe { *out = Box::into_raw(Box::new(ExgSession { inner: s })) };
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a session from [`exg_session_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exg_session_free(s: *mut ExgSession) {
    if !s.is_null() {
        // SAFETY: ownership returns from C.
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Number of indecomposable generators.
///
/// # Safety
/// `s` must be a live session and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exg_generator_count(s: *const ExgSession, out: *mut usize) -> ExgStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let s = unsafe { session(s) }?;
        if out.is_null() {
            return Err(ExgStatus::NullPointer);
        }
        // SAFETY: `out` is non-null.
        unsafe { *out = s.presentation().generator_count() };
        Ok(())
    })
}

/// Runs the core axiom checks; writes the JSON report and the exit code.
///
/// # Safety
/// `s` must be a live session; `json` and `exit_code` valid pointers. The
/// report is freed with [`exg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn exg_check_json(s: *const ExgSession, json: *mut *mut c_char, exit_code: *mut i32) -> ExgStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let s = unsafe { session(s) }?;
        if json.is_null() || exit_code.is_null() {
            return Err(ExgStatus::NullPointer);
        }
        let rep = s.check().map_err(fail)?;
        give_string(to_json(&rep).map_err(fail)?, json)?;
        // SAFETY: non-null.
        unsafe { *exit_code = rep.exit_code };
        Ok(())
    })
}

/// Runs the full localization; writes the JSON report and the exit code.
///
/// # Safety
/// As for [`exg_check_json`].
#[no_mangle]
pub unsafe extern "C" fn exg_localize_json(s: *const ExgSession, json: *mut *mut c_char, exit_code: *mut i32) -> ExgStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let s = unsafe { session(s) }?;
        if json.is_null() || exit_code.is_null() {
            return Err(ExgStatus::NullPointer);
        }
        let rep = s.localize().map_err(fail)?;
        give_string(to_json(&rep).map_err(fail)?, json)?;
        // SAFETY: non-null.
        unsafe { *exit_code = rep.exit_code };
        Ok(())
    })
}

/// `dim Hom(x, y)` for objects written `A + B + …` over generator labels.
///
/// # Safety
/// `s` must be a live session, `x` and `y` NUL-terminated strings and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exg_hom_dim(s: *const ExgSession, x: *const c_char, y: *const c_char, out: *mut usize) -> ExgStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let (s, x, y) = unsafe { (session(s)?, read_str(x)?, read_str(y)?) };
        if out.is_null() {
            return Err(ExgStatus::NullPointer);
        }
        let d = s.hom(x, y).map_err(fail)?.dim;
        // SAFETY: non-null.
        unsafe { *out = d };
        Ok(())
    })
}

/// `dim E(c, a)`.
///
/// # Safety
/// As for [`exg_hom_dim`].
#[no_mangle]
pub unsafe extern "C" fn exg_ext_dim(s: *const ExgSession, c: *const c_char, a: *const c_char, out: *mut usize) -> ExgStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let (s, c, a) = unsafe { (session(s)?, read_str(c)?, read_str(a)?) };
        if out.is_null() {
            return Err(ExgStatus::NullPointer);
        }
        let d = s.ext(c, a).map_err(fail)?.dim;
        // SAFETY: non-null.
        unsafe { *out = d };
        Ok(())
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `p` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exg_string_free(p: *mut c_char) {
    if !p.is_null() {
        // SAFETY: the string was created by `CString::into_raw`.
        drop(unsafe { CString::from_raw(p) });
    }
}

/// Message of the last failure on this thread, empty after a success. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn exg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
