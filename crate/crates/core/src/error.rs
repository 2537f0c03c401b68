use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request would exceed a configured resource cap.
    #[error("size cap exceeded: {what} = {requested} > cap {cap}")]
    SizeCap {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    /// An iterative eigensolver ran out of iterations. The last estimate and
    /// its residual are kept so callers can decide what to do with them.
    #[error(
        "eigensolver did not converge after {iterations} iterations \
         (last value {last_value}, residual {residual:e})"
    )]
    NonConvergence {
        iterations: usize,
        last_value: f64,
        residual: f64,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("random graph generation failed: {0}")]
    Generation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
