//! C interface to the explanation service.
//!
//! Sessions are opaque handles. Every fallible call returns an [`MwStatus`];
//! on failure the message is available from [`mw_last_error_message`] until
//! the next call on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with [`mw_string_free`].
//!
//! A handle may be shared between threads: calls on one session are
//! serialized, and [`mw_session_cancel`] interrupts a running call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::{Mutex, MutexGuard};

use missing_why::service::{
    query_from_json, result_json, vocabulary_from_json, ApplyTarget, Method, Session, SignatureSpec, Support,
};
use missing_why::syntax::ConceptName;
use missing_why::{CancelToken, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    SyntaxError = 3,
    InvalidArgument = 4,
    Unsupported = 5,
    AlreadyEntailed = 6,
    InconsistentInput = 7,
    InconsistentWithDisjointness = 8,
    NothingToApply = 9,
    IndexOutOfRange = 10,
    Cancelled = 11,
    BudgetExceeded = 12,
    Internal = 13,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwFormat {
    Json = 0,
    Dot = 1,
}

/// Opaque session handle.
pub struct MwSession {
    session: Mutex<Session>,
    cancel: Mutex<CancelToken>,
}

struct LastError {
    code: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn status_of(e: &Error) -> MwStatus {
    match e {
        Error::Syntax { .. } | Error::UnboundFixpointVariable(_) | Error::ExtendedSyntaxInCoreContext(_) => {
            MwStatus::SyntaxError
        }
        Error::Unsupported(_) | Error::BottomInTBox => MwStatus::Unsupported,
        Error::AlreadyEntailed(_) | Error::IsEntailed => MwStatus::AlreadyEntailed,
        Error::InconsistentInput | Error::SeedInconsistent(_) | Error::TableauClash(_) => MwStatus::InconsistentInput,
        Error::InconsistentWithDisjointness => MwStatus::InconsistentWithDisjointness,
        Error::NothingToApply => MwStatus::NothingToApply,
        Error::IndexOutOfRange { .. } => MwStatus::IndexOutOfRange,
        Error::Cancelled => MwStatus::Cancelled,
        Error::StepBudgetExceeded { .. } => MwStatus::BudgetExceeded,
        Error::Io(_) | Error::NotSaturated => MwStatus::Internal,
        _ => MwStatus::InvalidArgument,
    }
}

fn set_error(code: &str, message: String) {
    let clean = |s: String| CString::new(s.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = Some(LastError { code: clean(code.to_string()), message: clean(message) });
    });
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(MwStatus);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        set_error(e.code(), e.to_string());
        Failure(status_of(&e))
    }
}

fn fail(status: MwStatus, code: &str, message: &str) -> Failure {
    set_error(code, message.to_string());
    Failure(status)
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MwStatus::Ok,
        Ok(Err(Failure(s))) => s,
        Err(_) => {
            set_error("internal", "internal error".into());
            MwStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(MwStatus::NullArgument, "null_argument", "a required pointer argument is null"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(MwStatus::InvalidUtf8, "invalid_utf8", "argument is not UTF-8"))
}

unsafe fn handle<'a>(s: *const MwSession) -> Result<&'a MwSession, Failure> {
    s.as_ref().ok_or_else(|| fail(MwStatus::NullArgument, "null_argument", "session handle is null"))
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(MwStatus::NullArgument, "null_argument", "output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| fail(MwStatus::Internal, "internal", "output contains a NUL byte"))?;
    *out = c.into_raw();
    Ok(())
}

impl MwSession {
    fn fresh_token(&self) -> CancelToken {
        let t = CancelToken::new();
        *lock(&self.cancel) = t.clone();
        t
    }
}

/// Parses `ontology` (functional-style syntax) into a new session.
///
/// # Safety
/// `ontology` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_session_new(ontology: *const c_char, out: *mut *mut MwSession) -> MwStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(MwStatus::NullArgument, "null_argument", "output pointer is null"));
        }
        let session = Session::new("ffi", text(ontology)?)?;
        let boxed = Box::new(MwSession { session: Mutex::new(session), cancel: Mutex::new(CancelToken::new()) });
        *out = Box::into_raw(boxed);
        Ok(())
    })
}

/// # Safety
/// `session` must come from [`mw_session_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mw_session_free(session: *mut MwSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Sets the missing entailment from a query document
/// (`{"missing": [...]}`) and an optional vocabulary document
/// (`{"permitted": {...}}`); a null vocabulary permits every name.
///
/// # Safety
/// Pointers must be valid NUL-terminated strings; `vocabulary` may be null.
#[no_mangle]
pub unsafe extern "C" fn mw_session_set_query(
    session: *const MwSession,
    query_json: *const c_char,
    vocabulary_json: *const c_char,
) -> MwStatus {
    guard(|| {
        let s = handle(session)?;
        let missing = query_from_json(text(query_json)?)?;
        let spec = if vocabulary_json.is_null() {
            SignatureSpec::All
        } else {
            SignatureSpec::Explicit(vocabulary_from_json(text(vocabulary_json)?)?)
        };
        lock(&s.session).set_query(missing, spec)?;
        Ok(())
    })
}

/// Writes 1 to `supported` if `method` can run on the current query, else 0
/// with the reason available from [`mw_last_error_message`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_session_check_support(
    session: *const MwSession,
    method: *const c_char,
    supported: *mut i32,
) -> MwStatus {
    guard(|| {
        let s = handle(session)?;
        let m: Method = text(method)?.parse()?;
        if supported.is_null() {
            return Err(fail(MwStatus::NullArgument, "null_argument", "output pointer is null"));
        }
        match lock(&s.session).check_support(m) {
            Support::Supported => *supported = 1,
            Support::Unsupported(msg) => {
                *supported = 0;
                set_error("unsupported", msg);
            }
        }
        Ok(())
    })
}

/// Runs `method` and writes the result as JSON; graphs carry at most `k`
/// labels per element.
///
/// # Safety
/// Pointers must be valid; the string written to `out` must be released
/// with [`mw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mw_session_explain(
    session: *const MwSession,
    method: *const c_char,
    page_size: usize,
    k: usize,
    out: *mut *mut c_char,
) -> MwStatus {
    guard(|| {
        let s = handle(session)?;
        let m: Method = text(method)?.parse()?;
        let token = s.fresh_token();
        let mut guard = lock(&s.session);
        let r = guard.generate_explanations(m, page_size, &token)?;
        write_out(out, result_json(r, k)?.to_string())
    })
}

/// Stages a disjointness between `count` class names.
///
/// # Safety
/// `names` must point to `count` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn mw_session_add_disjointness(
    session: *const MwSession,
    names: *const *const c_char,
    count: usize,
) -> MwStatus {
    guard(|| {
        let s = handle(session)?;
        if names.is_null() && count > 0 {
            return Err(fail(MwStatus::NullArgument, "null_argument", "names is null"));
        }
        let mut parsed = Vec::with_capacity(count);
        for i in 0..count {
            let n = text(*names.add(i))?;
            parsed.push(ConceptName::new(n.strip_prefix(':').unwrap_or(n)));
        }
        lock(&s.session).add_disjointness(&parsed)?;
        Ok(())
    })
}

/// # Safety
/// `session` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_session_remove_disjointness(session: *const MwSession, index: usize) -> MwStatus {
    guard(|| {
        lock(&handle(session)?.session).remove_disjointness(index)?;
        Ok(())
    })
}

/// Reruns a counterexample method with the staged disjointnesses.
///
/// # Safety
/// As for [`mw_session_explain`].
#[no_mangle]
pub unsafe extern "C" fn mw_session_recompute(
    session: *const MwSession,
    method: *const c_char,
    k: usize,
    out: *mut *mut c_char,
) -> MwStatus {
    guard(|| {
        let s = handle(session)?;
        let m: Method = text(method)?.parse()?;
        let token = s.fresh_token();
        let mut guard = lock(&s.session);
        let r = guard.recompute(m, &token)?;
        write_out(out, result_json(r, k)?.to_string())
    })
}

/// Commits the staged disjointnesses when `hypothesis` is negative,
/// otherwise the hypothesis with that index from the latest result.
///
/// # Safety
/// `session` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_session_apply(session: *const MwSession, hypothesis: i64) -> MwStatus {
    guard(|| {
        let target = match usize::try_from(hypothesis) {
            Ok(i) => ApplyTarget::Hypothesis(i),
            Err(_) => ApplyTarget::Disjointnesses,
        };
        lock(&handle(session)?.session).apply_changes(target)?;
        Ok(())
    })
}

/// # Safety
/// `session` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_session_revert(session: *const MwSession) -> MwStatus {
    guard(|| {
        lock(&handle(session)?.session).revert_changes();
        Ok(())
    })
}

/// Writes the current ontology in functional-style syntax.
///
/// # Safety
/// As for [`mw_session_explain`].
#[no_mangle]
pub unsafe extern "C" fn mw_session_ontology(session: *const MwSession, out: *mut *mut c_char) -> MwStatus {
    guard(|| {
        let text = lock(&handle(session)?.session).ontology.serialize();
        write_out(out, text)
    })
}

/// Exports the latest counterexample as JSON or DOT.
///
/// # Safety
/// As for [`mw_session_explain`].
#[no_mangle]
pub unsafe extern "C" fn mw_session_graph(
    session: *const MwSession,
    k: usize,
    format: MwFormat,
    out: *mut *mut c_char,
) -> MwStatus {
    guard(|| {
        let doc = lock(&handle(session)?.session).graph(k)?;
        write_out(out, if format == MwFormat::Dot { doc.to_dot() } else { doc.to_json() })
    })
}

/// Interrupts a running explain or recompute call on `session`; safe to call
/// from any thread.
///
/// # Safety
/// `session` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_session_cancel(session: *const MwSession) -> MwStatus {
    guard(|| {
        lock(&handle(session)?.cancel).cancel();
        Ok(())
    })
}

/// Message of the last failure on this thread, or null.
#[no_mangle]
pub extern "C" fn mw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.message.as_ptr()))
}

/// Machine-readable code of the last failure on this thread, or null.
#[no_mangle]
pub extern "C" fn mw_last_error_code() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.code.as_ptr()))
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn mw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
