use thiserror::Error;

/// Failures raised by the geometry and linear-algebra routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The legs admit no proper triangle on the sphere.
    #[error("no proper triangle: cosine argument {argument} lies outside [-1, 1]")]
    NoProperTriangle { argument: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
