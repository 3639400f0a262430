//! Error type shared across the kernel.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HgError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at {0}")]
    PoleAt(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator table mismatch")]
    TableMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("no star structure on this presentation")]
    NoStar,

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("bad tensor slot: {0}")]
    BadSlot(String),

    #[error("degree bound too small: {0}")]
    BoundTooSmall(String),

    #[error("preset `{0}` does not support this operation")]
    UnsupportedPreset(String),

    #[error("missing Hopf structure on preset `{0}`")]
    MissingHopf(String),

    #[error("element is not a recognized unit: {0}")]
    NotAUnit(String),

    #[error("right factor `{0}` outside the generator span")]
    ExpansionFailure(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0}")]
    Other(String),
}
