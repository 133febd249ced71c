use thiserror::Error;

/// Library-wide error type.
///
/// `Validation` covers domain rejections (bad group specifiers, off-table
/// classification requests, non-dominant inputs where dominance is required,
/// and similar). `CapExceeded` covers resource-cap rejections (Weyl-group
/// closure caps, ball-length caps, enumeration caps); it carries a short cost
/// hint so callers can decide whether to raise the cap.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Validation(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn cap(msg: impl Into<String>) -> Self {
        Error::CapExceeded(msg.into())
    }
}
