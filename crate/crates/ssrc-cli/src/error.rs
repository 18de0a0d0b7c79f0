//! CLI error type and the exit-code contract:
//! 0 success, 1 verification failure, 2 bad input, 3 dimension mismatch,
//! 4 construction failure.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("bad input: {0}")]
    BadInput(ssrc_core::Error),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("io error on {0}: {1}")]
    Io(String, std::io::Error),

    #[error("parse error in {0}: {1}")]
    Parse(String, serde_json::Error),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(ssrc_core::Error),

    #[error("construction failed: {0}")]
    ConstructionFailed(ssrc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::BadInput(_) | CliError::Malformed(_) | CliError::Io(..) | CliError::Parse(..) => 2,
            CliError::DimensionMismatch(_) => 3,
            CliError::ConstructionFailed(_) => 4,
        }
    }

    /// Sort a core error into the exit-code taxonomy.
    pub fn from_core(err: ssrc_core::Error) -> Self {
        use ssrc_core::Error::*;
        match err {
            DimensionMismatch { .. } => CliError::DimensionMismatch(err),
            NonUnitaryTransform { .. }
            | HwRelationViolated { .. }
            | NonIsometric { .. }
            | ConventionCheckFailed { .. } => CliError::ConstructionFailed(err),
            _ => CliError::BadInput(err),
        }
    }
}
