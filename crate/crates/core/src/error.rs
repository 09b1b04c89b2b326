use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {re}{im:+}i")]
    PoleOfGamma { re: f64, im: f64 },

    #[error("zero base raised to a power with non-positive real part")]
    ZeroBase,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("degenerate poles: {0}")]
    DegeneratePoles(String),

    #[error("no separating contour: {0}")]
    NoSeparatingContour(String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("Fox H-function does not exist at this argument: {0}")]
    NotInExistenceDomain(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

impl Error {
    /// Errors caused by bad input rather than by a numerical scheme giving up.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::DomainError(_)
                | Error::ConfigMismatch(_)
                | Error::ZeroBase
                | Error::PoleOfGamma { .. }
                | Error::NotInExistenceDomain(_)
        )
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
