//! Command-line front end. [`run_in`] executes one command in-process and
//! returns its exit code and output bytes; the binary only forwards them.
//!
//! Exit codes: 0 on success, 2 when the input fails validation (the output
//! then carries a machine-readable violation list), 1 on usage errors.

mod args;
mod ops;

use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

pub use args::{Cli, CorpusOp, Format};

use crate::error::Error;

/// Exit code and bytes produced by one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Output {
    pub fn stdout_str(&self) -> &str {
        std::str::from_utf8(&self.stdout).unwrap_or("")
    }
}

/// A failed command: usage errors carry a message, validation failures a
/// JSON body.
#[derive(Debug)]
pub(crate) enum Fail {
    Usage(String),
    Invalid(Value),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Io(e) => Fail::Usage(e.to_string()),
            Error::InvalidInput(r) | Error::NotAnAdjunction(r) => Fail::Invalid(json!({
                "error": "invalid_input",
                "violations": r.violations,
            })),
            e => Fail::Invalid(json!({ "error": error_kind(&e), "message": e.to_string() })),
        }
    }
}

pub(crate) fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::MalformedInput(_) => "malformed_input",
        Error::NotComposable { .. } => "not_composable",
        Error::UnknownNode(_) => "unknown_node",
        Error::UnknownObject(_) => "unknown_object",
        Error::UnknownMorphism(_) => "unknown_morphism",
        Error::SizeLimitExceeded(_) => "size_limit_exceeded",
        Error::NotParallel(_) => "not_parallel",
        Error::NotGroupoidal => "not_groupoidal",
        Error::InvalidInput(_) => "invalid_input",
        Error::NotAnAdjunction(_) => "not_an_adjunction",
        Error::NotAMonad(_) => "not_a_monad",
        Error::BoundaryMismatch(_) => "boundary_mismatch",
        Error::Overflow => "overflow",
        Error::UnsupportedSchema(_) => "unsupported_schema",
        Error::Json(_) => "malformed_json",
        Error::Io(_) => "io",
    }
}

/// Pretty JSON with a trailing newline.
pub(crate) fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serializable");
    out.push(b'\n');
    out
}

/// Successful output of a command: the bytes and whether they report a
/// failed check (exit 2) rather than a result.
pub(crate) struct Rendered {
    pub bytes: Vec<u8>,
    pub failed: bool,
}

impl Rendered {
    pub fn ok(bytes: Vec<u8>) -> Rendered {
        Rendered { bytes, failed: false }
    }

    pub fn json<T: Serialize>(v: &T) -> Rendered {
        Rendered::ok(to_json(v))
    }

    pub fn check<T: Serialize>(v: &T, pass: bool) -> Rendered {
        Rendered {
            bytes: to_json(v),
            failed: !pass,
        }
    }
}

/// Runs `argv` (program name first) with relative paths resolved against the
/// current directory.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_in(Path::new("."), argv)
}

/// Runs `argv` with relative `--in`/`--out`/`--dir` paths resolved against `base`.
pub fn run_in<I, T>(base: &Path, argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: Vec::new(),
                    stderr: text,
                }
            };
        }
    };
    let out_path = cli.out_path().map(|p| resolve(base, p));
    let result = ops::dispatch(base, &cli);
    let (code, bytes, stderr) = match result {
        Ok(r) => (if r.failed { 2 } else { 0 }, r.bytes, String::new()),
        Err(Fail::Usage(msg)) => (1, Vec::new(), format!("error: {msg}\n")),
        Err(Fail::Invalid(body)) => (2, to_json(&body), String::new()),
    };
    match out_path {
        Some(p) if !bytes.is_empty() => match std::fs::write(&p, &bytes) {
            Ok(()) => Output {
                code,
                stdout: Vec::new(),
                stderr,
            },
            Err(e) => Output {
                code: 1,
                stdout: Vec::new(),
                stderr: format!("error: cannot write {}: {e}\n", p.display()),
            },
        },
        _ => Output {
            code,
            stdout: bytes,
            stderr,
        },
    }
}

pub(crate) fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}
