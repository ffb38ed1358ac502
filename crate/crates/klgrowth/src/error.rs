//! Crate-wide error type. The CLI maps these onto exit codes: bad input and
//! domain errors exit 2, truncation-window violations exit 3, resource caps
//! exit 4.

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation window: {0}")]
    Truncation(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("cache: {0}")]
    Cache(String),
}

impl Error {
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidRootSystem(_)
            | Error::BadArgument(_)
            | Error::Domain(_)
            | Error::Cache(_) => 2,
            Error::Truncation(_) => 3,
            Error::ResourceCap(_) => 4,
        }
    }
}
