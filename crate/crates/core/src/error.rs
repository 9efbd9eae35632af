use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole of the gamma function: {0}")]
    Pole(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("accuracy loss: {0}")]
    Accuracy(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("truncation error: tail mass {tail:.3e} exceeds limit")]
    Truncation { tail: f64 },
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("outside convergence cone: {0}")]
    Cone(String),
    #[error("unsupported family: {0}")]
    Family(String),
    #[error("root bracket failure: {0}")]
    Bracket(String),
    #[error("state is not normalized: |norm^2 - 1| = {0:.3e}")]
    Unnormalized(f64),
}

impl Error {
    /// True for errors caused by invalid caller parameters, false for
    /// numerical breakdowns.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Pole(_)
                | Error::Size(_)
                | Error::DimMismatch { .. }
                | Error::Cone(_)
                | Error::Family(_)
                | Error::Unnormalized(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
