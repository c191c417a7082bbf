use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point lies outside the domain of the operation (outside the disk,
    /// on a puncture, non-finite).
    #[error("domain error: {0}")]
    Domain(String),

    /// A scalar parameter is outside its admissible range.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A computed ratio exceeded a proven upper bound. This either falsifies
    /// the bound or reveals a numerical bug; never a convergence issue.
    #[error("bound violated: ratio {value} exceeds {bound} at z={z}, w={w}")]
    BoundViolation {
        value: f64,
        bound: f64,
        z: String,
        w: String,
    },

    /// A post-search sanity invariant did not hold.
    #[error("search invariant failed: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
