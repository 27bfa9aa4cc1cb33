//! C ABI over catkit.
//!
//! Objects cross the boundary as opaque handles created from JSON documents
//! and released with the matching `_free` function. Every fallible call
//! returns a [`CatkitStatus`]; on failure [`catkit_last_error`] describes the
//! error until the next call on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! [`catkit_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use catkit::descent::{em_equivalence_check, FinMonad};
use catkit::fincat::{CatRef, FinCat, FinCatData};
use catkit::present::{deficiency, word_eq, Presentation, Word, WordEq};
use catkit::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatkitStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    MalformedInput = 3,
    InvalidInput = 4,
    UnknownName = 5,
    NotComposable = 6,
    SizeLimitExceeded = 7,
    NotAMonad = 8,
    Unsupported = 9,
    Overflow = 10,
    Internal = 11,
}

/// Result of a bounded word-problem query.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatkitVerdict {
    Equal = 0,
    Distinct = 1,
    Unknown = 2,
}

/// A validated finite category.
pub struct CatkitCategory(CatRef);

/// A presented category or groupoid with its rewriting bound.
pub struct CatkitPresentation(Presentation);

/// A finite monad.
pub struct CatkitMonad(FinMonad);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CatkitStatus {
    match e {
        Error::MalformedInput(_) | Error::Json(_) | Error::Io(_) | Error::NotParallel(_) => CatkitStatus::MalformedInput,
        Error::InvalidInput(_) | Error::NotAnAdjunction(_) | Error::BoundaryMismatch(_) => CatkitStatus::InvalidInput,
        Error::UnknownNode(_) | Error::UnknownObject(_) | Error::UnknownMorphism(_) => CatkitStatus::UnknownName,
        Error::NotComposable { .. } => CatkitStatus::NotComposable,
        Error::SizeLimitExceeded(_) => CatkitStatus::SizeLimitExceeded,
        Error::NotAMonad(_) => CatkitStatus::NotAMonad,
        Error::NotGroupoidal | Error::UnsupportedSchema(_) => CatkitStatus::Unsupported,
        Error::Overflow => CatkitStatus::Overflow,
    }
}

struct Fail(CatkitStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let msg = match &e {
            Error::InvalidInput(r) | Error::NotAnAdjunction(r) => {
                let lines: Vec<String> = r.violations.iter().map(|v| v.detail.clone()).collect();
                format!("{e}: {}", lines.join("; "))
            }
            _ => e.to_string(),
        };
        Fail(status_of(&e), msg)
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Fail {
        Fail(CatkitStatus::MalformedInput, e.to_string())
    }
}

/// Runs `f`, recording its error and converting panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CatkitStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CatkitStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal error".into());
            CatkitStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CatkitStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CatkitStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(CatkitStatus::NullArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CatkitStatus::NullArgument, "null out-parameter".into()));
    }
    *out = v;
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next catkit call on the same thread.
#[no_mangle]
pub extern "C" fn catkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn catkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a `fincat/v1` document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn catkit_category_from_json(json: *const c_char, out: *mut *mut CatkitCategory) -> CatkitStatus {
    guard(|| {
        let data: FinCatData = serde_json::from_str(text(json)?)?;
        let c = FinCat::new_valid(&data)?;
        put(out, Box::into_raw(Box::new(CatkitCategory(Arc::new(c)))))
    })
}

/// # Safety
/// `c` must be NULL or a handle from [`catkit_category_from_json`].
#[no_mangle]
pub unsafe extern "C" fn catkit_category_free(c: *mut CatkitCategory) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn catkit_category_num_objects(c: *const CatkitCategory) -> usize {
    c.as_ref().map_or(0, |c| c.0.num_objects())
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn catkit_category_num_morphisms(c: *const CatkitCategory) -> usize {
    c.as_ref().map_or(0, |c| c.0.num_morphisms())
}

/// Id of `g ∘ f`.
///
/// # Safety
/// `c` must be a live handle, `g` and `f` NUL-terminated strings and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_category_compose(
    c: *const CatkitCategory,
    g: *const c_char,
    f: *const c_char,
    out: *mut *mut c_char,
) -> CatkitStatus {
    guard(|| {
        let c = handle(c)?;
        let r = c.0.compose_ids(text(g)?, text(f)?)?.to_string();
        put(out, owned(r))
    })
}

/// Canonical `fincat/v1` JSON of the category.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_category_to_json(c: *const CatkitCategory, out: *mut *mut c_char) -> CatkitStatus {
    guard(|| {
        let c = handle(c)?;
        put(out, owned(serde_json::to_string(&c.0.to_data())?))
    })
}

/// Parses a `computad/v1` document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_presentation_from_json(
    json: *const c_char,
    out: *mut *mut CatkitPresentation,
) -> CatkitStatus {
    guard(|| {
        let p = Presentation::from_data(&serde_json::from_str(text(json)?)?)?;
        put(out, Box::into_raw(Box::new(CatkitPresentation(p))))
    })
}

/// # Safety
/// `p` must be NULL or a handle from [`catkit_presentation_from_json`].
#[no_mangle]
pub unsafe extern "C" fn catkit_presentation_free(p: *mut CatkitPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Bounded word problem between two words in the text syntax of the CLI.
///
/// # Safety
/// `p` must be a live handle, `lhs` and `rhs` NUL-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_presentation_word_eq(
    p: *const CatkitPresentation,
    lhs: *const c_char,
    rhs: *const c_char,
    out: *mut CatkitVerdict,
) -> CatkitStatus {
    guard(|| {
        let p = &handle(p)?.0;
        let w1 = Word::parse(p.graph(), text(lhs)?, None)?;
        let w2 = Word::parse(p.graph(), text(rhs)?, None)?;
        let v = match word_eq(p, &w1, &w2)? {
            WordEq::Equal => CatkitVerdict::Equal,
            WordEq::Distinct => CatkitVerdict::Distinct,
            WordEq::Unknown => CatkitVerdict::Unknown,
        };
        put(out, v)
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_presentation_deficiency(p: *const CatkitPresentation, out: *mut i64) -> CatkitStatus {
    guard(|| {
        let d = deficiency(&handle(p)?.0)?;
        put(out, d)
    })
}

/// Parses a `monad/v1` document and checks the monad laws.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_monad_from_json(json: *const c_char, out: *mut *mut CatkitMonad) -> CatkitStatus {
    guard(|| {
        let m = FinMonad::from_wire(&serde_json::from_str(text(json)?)?)?;
        m.require_valid()?;
        put(out, Box::into_raw(Box::new(CatkitMonad(m))))
    })
}

/// # Safety
/// `m` must be NULL or a handle from [`catkit_monad_from_json`].
#[no_mangle]
pub unsafe extern "C" fn catkit_monad_free(m: *mut CatkitMonad) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Whether the algebras of `m` are isomorphic to the colax descent category
/// of its diagram.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_monad_em_check(m: *const CatkitMonad, out: *mut bool) -> CatkitStatus {
    guard(|| {
        let iso = em_equivalence_check(&handle(m)?.0)?;
        put(out, iso.is_some_and(|i| i.verify()))
    })
}

/// Runs one CLI command (`argv` excludes the program name) and returns its
/// exit code; stdout goes to `out`.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings and `out` and `exit`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn catkit_run_json(
    argc: c_int,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    exit: *mut c_int,
) -> CatkitStatus {
    guard(|| {
        if argc < 0 || (argc > 0 && argv.is_null()) {
            return Err(Fail(CatkitStatus::NullArgument, "bad argument vector".into()));
        }
        let mut args = vec!["catkit".to_string()];
        for i in 0..argc as usize {
            args.push(text(*argv.add(i))?.to_string());
        }
        let o = catkit::cli::run(args);
        if o.code == 1 {
            set_error(o.stderr.trim().to_string());
        }
        put(exit, o.code)?;
        put(out, owned(String::from_utf8_lossy(&o.stdout).into_owned()))
    })
}
