use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CmcError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("stencil error: {0}")]
    Stencil(String),
    #[error("immersion degeneracy: {0}")]
    Degenerate(String),
    #[error("conditioning error: {0}")]
    Conditioning(String),
    #[error("q vanishes at this point (|q| = {0:e})")]
    ZeroOfQ(f64),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unreachable bucket: {0}")]
    UnreachableBucket(String),
}

pub type Result<T> = std::result::Result<T, CmcError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(CmcError::Domain(msg.into()))
}

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(CmcError::Parameter(msg.into()))
}
