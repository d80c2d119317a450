use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported dimension {d} (supported: {supported})")]
    UnsupportedDimension { d: usize, supported: &'static str },

    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    #[error("query within {cutoff:e} of the diagonal (distance {distance:e})")]
    NearDiagonal { distance: f64, cutoff: f64 },

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("non-integrable weight on interval [{a}, {b}]")]
    NonIntegrable { a: f64, b: f64 },

    #[error("i/o failure: {0}")]
    Io(String),
    #[error("inadmissible weight: {0}")]
    InadmissibleWeight(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
