use thiserror::Error;

use crate::snp::SnpVerdict;

/// Errors raised by the exact-geometry core.
///
/// Validation failures carry enough structure for the CLI to emit a one-line
/// diagnostic naming the violated condition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector is not admissible here")]
    ZeroVector,

    #[error("generator ({p}, {q}) is not primitive")]
    NonPrimitiveGenerator { p: String, q: String },

    #[error("generator ({p}, {q}) lies outside the first quadrant")]
    OutsideFirstQuadrant { p: String, q: String },

    #[error("degenerate cone: generators are linearly dependent")]
    DegenerateCone,

    #[error("non-positive determinant: generators are not in increasing slope order")]
    NonPositiveDeterminant,

    #[error("invalid weight sequence at pair k={index}: {condition}")]
    InvalidWeightSequence { index: usize, condition: String },

    #[error("invalid germ: {}", violations.join("; "))]
    InvalidGerm { violations: Vec<String> },

    #[error("index k={k} out of range [{min}, {max}]")]
    IndexOutOfRange { k: usize, min: usize, max: usize },

    #[error("SNP: {verdict}")]
    NotSnpMember { n: usize, verdict: SnpVerdict },

    #[error("degenerate threshold: 1 - a0*p1 = 0")]
    DegenerateThreshold,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("extension rejected: {0}")]
    ExtendRejected(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("{0}")]
    Domain(String),

    #[error("cannot parse rational from {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("cannot parse weight sequence from {input:?}: {reason}")]
    ParseWeights { input: String, reason: String },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
