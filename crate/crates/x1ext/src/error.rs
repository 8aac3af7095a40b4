use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the admissible range of an operation (bad parameters,
    /// evaluation at a pole or outside a potential's interval, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A polynomial construction produced an unusable linear system.
    #[error("construction error: {0}")]
    Construction(String),

    /// A numerical procedure failed to reach its target accuracy.
    /// `estimate` carries the best value achieved.
    #[error("numeric error: {message} (best estimate {estimate})")]
    Numeric { message: String, estimate: f64 },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub fn numeric(msg: impl Into<String>, estimate: f64) -> Self {
        Error::Numeric {
            message: msg.into(),
            estimate,
        }
    }
}
