use thiserror::Error;

use crate::structures::Violation;

/// Errors raised by the kernel when inputs are malformed or mis-shaped.
///
/// Axiom failures of otherwise well-shaped structures are reported as
/// [`Violation`]s by the `check` family; they only surface here when a
/// checked constructor rejects its input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{label}` in set `{set}`")]
    DuplicateLabel { set: String, label: String },

    #[error("unknown label `{label}` in set `{set}`")]
    UnknownLabel { set: String, label: String },

    #[error("index {index} is out of range for set `{set}` of size {len}")]
    IndexOutOfRange { set: String, index: usize, len: usize },

    #[error("{op}: carrier mismatch, expected `{expected}` but found `{found}`")]
    CarrierMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("{op}: relation `{src}` -> `{dst}` is not square")]
    NotSquare {
        op: &'static str,
        src: String,
        dst: String,
    },

    #[error("function `{src}` -> `{dst}` has no image for `{label}`")]
    NotTotal {
        src: String,
        dst: String,
        label: String,
    },

    #[error("powerset of `{set}` needs {len} base elements, above the cap of {cap}")]
    PowersetCap { set: String, len: usize, cap: usize },

    #[error("{op}: morphism endpoints do not match")]
    EndpointMismatch { op: &'static str },

    #[error("invalid structure: {0}")]
    Invalid(Violation),
}
