//! C ABI over the reqtrace pipeline.
//!
//! Every fallible function returns a [`ReqtraceStatus`]; on failure the
//! message is available from [`reqtrace_last_error`] on the same thread.
//! Objects are handed out as opaque pointers and released with their
//! matching `_free` function. Strings returned through `out` parameters
//! belong to the caller and are released with [`reqtrace_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use reqtrace::docs::load_requirement_documents;
use reqtrace::eval::{evaluate, recovered_links_from_json, GoldLinks};
use reqtrace::model::{compute_metrics, save_facts_xml, CodeFacts};
use reqtrace::pipeline::{load_code_facts, recover_links, CodeSource, TraceArtifacts};
use reqtrace::text::StopWordList;
use reqtrace::trace::{emit_dot_poset, emit_dot_tracelinks};
use reqtrace::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReqtraceStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    Config = 5,
    InvalidParameter = 6,
    EmptyCorpus = 7,
    Panic = 99,
}

impl From<&Error> for ReqtraceStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Io { .. } => ReqtraceStatus::Io,
            Error::Xml { .. } | Error::Schema { .. } | Error::Format { .. } => ReqtraceStatus::Parse,
            Error::Config(_) => ReqtraceStatus::Config,
            Error::Parameter(_) => ReqtraceStatus::InvalidParameter,
            Error::EmptyVocabulary | Error::Degenerate(_) => ReqtraceStatus::EmptyCorpus,
        }
    }
}

/// Extracted code facts.
pub struct ReqtraceFacts {
    facts: CodeFacts,
}

/// Result of one link recovery run.
pub struct ReqtraceTrace {
    artifacts: TraceArtifacts,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes were replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(ReqtraceStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ReqtraceStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ReqtraceStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            ReqtraceStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(ReqtraceStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ReqtraceStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(ReqtraceStatus::NullArgument, format!("{name} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ReqtraceStatus::NullArgument, "out is null".into()));
    }
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    check_out(out)?;
    let c = CString::new(s).map_err(|_| Failure(ReqtraceStatus::Parse, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn reqtrace_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn reqtrace_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses every `.java` file below `root`. Parser warnings are not reported.
///
/// # Safety
/// `root` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_facts_from_source(root: *const c_char, out: *mut *mut ReqtraceFacts) -> ReqtraceStatus {
    guard(|| {
        check_out(out)?;
        let root = PathBuf::from(str_arg(root, "root")?);
        let (facts, _) = load_code_facts(&CodeSource::Src(root))?;
        *out = Box::into_raw(Box::new(ReqtraceFacts { facts }));
        Ok(())
    })
}

/// Loads a code-facts XML file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_facts_from_xml(path: *const c_char, out: *mut *mut ReqtraceFacts) -> ReqtraceStatus {
    guard(|| {
        check_out(out)?;
        let path = PathBuf::from(str_arg(path, "path")?);
        let (facts, _) = load_code_facts(&CodeSource::Facts(path))?;
        *out = Box::into_raw(Box::new(ReqtraceFacts { facts }));
        Ok(())
    })
}

/// Number of classes, or 0 for NULL.
///
/// # Safety
/// `facts` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_facts_class_count(facts: *const ReqtraceFacts) -> usize {
    facts.as_ref().map_or(0, |f| compute_metrics(&f.facts).noc)
}

/// Canonical XML serialization of the facts.
///
/// # Safety
/// `facts` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_facts_to_xml(facts: *const ReqtraceFacts, out: *mut *mut c_char) -> ReqtraceStatus {
    guard(|| {
        let facts = ref_arg(facts, "facts")?;
        let xml = String::from_utf8(save_facts_xml(&facts.facts)).expect("writer emits UTF-8");
        put_string(out, xml)
    })
}

/// Releases a facts handle. NULL is ignored.
///
/// # Safety
/// `facts` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_facts_free(facts: *mut ReqtraceFacts) {
    if !facts.is_null() {
        drop(Box::from_raw(facts));
    }
}

/// Recovers links between `facts` and the requirement files in `reqs_dir`.
/// `topics` of 0 selects full rank; `stopwords` may be NULL for the
/// built-in list.
///
/// # Safety
/// Pointers must be valid as documented; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_trace(
    facts: *const ReqtraceFacts,
    reqs_dir: *const c_char,
    threshold: f64,
    topics: usize,
    stopwords: *const c_char,
    out: *mut *mut ReqtraceTrace,
) -> ReqtraceStatus {
    guard(|| {
        check_out(out)?;
        let facts = ref_arg(facts, "facts")?;
        let reqs = PathBuf::from(str_arg(reqs_dir, "reqs_dir")?);
        let stops = if stopwords.is_null() {
            StopWordList::default()
        } else {
            StopWordList::from_file(str_arg(stopwords, "stopwords")?.as_ref())?
        };
        let queries = load_requirement_documents(&reqs)?;
        let topics = (topics > 0).then_some(topics);
        let artifacts = recover_links(&facts.facts, queries, &stops, threshold, topics)?;
        *out = Box::into_raw(Box::new(ReqtraceTrace { artifacts }));
        Ok(())
    })
}

/// Total number of (requirement, class) links, or 0 for NULL.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_trace_link_count(trace: *const ReqtraceTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.artifacts.links.link_count())
}

/// Number of AOC-poset concepts, or 0 for NULL.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_trace_concept_count(trace: *const ReqtraceTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.artifacts.poset.concepts.len())
}

/// JSON link report (same content as `links.json`).
///
/// # Safety
/// `trace` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_trace_links_json(trace: *const ReqtraceTrace, out: *mut *mut c_char) -> ReqtraceStatus {
    guard(|| put_string(out, ref_arg(trace, "trace")?.artifacts.links.to_json()))
}

/// DOT rendering of the AOC-poset.
///
/// # Safety
/// `trace` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_trace_poset_dot(trace: *const ReqtraceTrace, out: *mut *mut c_char) -> ReqtraceStatus {
    guard(|| put_string(out, emit_dot_poset(&ref_arg(trace, "trace")?.artifacts.poset)))
}

/// DOT rendering of the requirement/class link graph.
///
/// # Safety
/// `trace` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_trace_links_dot(trace: *const ReqtraceTrace, out: *mut *mut c_char) -> ReqtraceStatus {
    guard(|| put_string(out, emit_dot_tracelinks(&ref_arg(trace, "trace")?.artifacts.links)))
}

/// Releases a trace handle. NULL is ignored.
///
/// # Safety
/// `trace` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_trace_free(trace: *mut ReqtraceTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Scores a links JSON document against a gold JSON document and returns
/// the report as JSON.
///
/// # Safety
/// Both inputs must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn reqtrace_evaluate_json(
    links_json: *const c_char,
    gold_json: *const c_char,
    out: *mut *mut c_char,
) -> ReqtraceStatus {
    guard(|| {
        let links = recovered_links_from_json(str_arg(links_json, "links_json")?.as_bytes())?;
        let gold = GoldLinks::from_json(str_arg(gold_json, "gold_json")?.as_bytes())?;
        put_string(out, evaluate(&links, &gold)?.to_json())
    })
}
