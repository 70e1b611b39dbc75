//! Crate-wide error type.

/// Errors reported by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine could not certify the requested tolerance.
    ///
    /// Carries the best error bound that was achieved so callers can decide
    /// whether the partial result is still usable.
    #[error("tolerance not met: requested {requested:e}, achieved {achieved:e}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    /// The density does not provide a sampler.
    #[error("sampling is not supported for this density")]
    SamplerUnsupported,

    /// A dataset had no classifiable values.
    #[error("empty dataset: {excluded} value(s) excluded, none classifiable")]
    EmptyDataset { excluded: usize },

    /// Malformed textual input (density specs, data files, tables).
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
