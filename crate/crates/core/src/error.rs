use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {what} at x = {x}")]
    Domain { what: String, x: f64 },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("singular normalization: a = -1 makes 1/(4(a+1)) infinite")]
    SingularNormalization,

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("unknown ordering '{name}'; valid names: {valid}")]
    UnknownOrdering { name: String, valid: String },

    #[error("singular potential: non-finite {what} at node x = {x}")]
    SingularPotential { what: String, x: f64 },

    #[error("operator word has {0} momentum tokens (at most 2 supported)")]
    TooDeep(usize),

    #[error("problem is not reducible to constant mass: {0}")]
    NotReducible(String),

    #[error("eigensolver failed: {0}")]
    ConvergenceFailure(String),

    #[error("eigenvalue {index} is not converging under refinement (observed order {order:.3})")]
    NotConverging { index: usize, order: f64 },

    #[error("scenario error: {0}")]
    Schema(String),

    #[error("identity check failed: {0}")]
    IdentityThreshold(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>, x: f64) -> Self {
        Error::Domain {
            what: what.into(),
            x,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
