use promrep_core::workspace::FormatError;
use promrep_core::{Error, Violation};
use thiserror::Error;

use crate::laws::InstanceKind;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown law `{0}`")]
    UnknownLaw(String),

    #[error("law `{law}` expects a {expected:?} instance, got {found:?}")]
    ShapeMismatch {
        law: &'static str,
        expected: InstanceKind,
        found: InstanceKind,
    },

    #[error("invalid input for `{law}`: {violation}")]
    InvalidInstance { law: &'static str, violation: Violation },

    #[error("{0}")]
    Bounds(String),

    #[error(transparent)]
    Core(#[from] Error),

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error("malformed witness: {0}")]
    Witness(String),
}
