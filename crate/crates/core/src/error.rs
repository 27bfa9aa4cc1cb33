use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("morphisms `{g}` and `{f}` are not composable")]
    NotComposable { g: String, f: String },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("words are not parallel: {0}")]
    NotParallel(String),
    #[error("presentation is not groupoidal")]
    NotGroupoidal,
    #[error("invalid input ({} violations)", .0.violations.len())]
    InvalidInput(ValidationReport),
    #[error("not an adjunction ({} violations)", .0.violations.len())]
    NotAnAdjunction(ValidationReport),
    #[error("not a monad: {0}")]
    NotAMonad(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("unsupported schema `{0}`")]
    UnsupportedSchema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
