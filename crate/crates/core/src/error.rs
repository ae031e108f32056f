use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of an operation was not met by its caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Parameters that make an integrator or sampler ill-posed.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("eigen-decomposition failed: {reason} (condition estimate {condition:e})")]
    Decomposition { reason: String, condition: f64 },

    #[error("singular linear system (smallest pivot {pivot:e})")]
    Singular { pivot: f64 },

    #[error("value not representable in f64 (log-magnitude {log_abs})")]
    NotRepresentable { log_abs: f64 },

    #[error("eigenvalue collision: gap {gap:e} persisted after {halvings} step halvings")]
    Collision { gap: f64, halvings: u32 },

    #[error("root not bracketed: {0}")]
    NoRoot(String),

    #[error("residual undefined: |value| = {0:e} at probe")]
    UndefinedResidual(f64),
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
