use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Rejected model parameters or command inputs.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown {family} `{name}` (available: {available})")]
    UnknownStrategy {
        family: &'static str,
        name: String,
        available: String,
    },

    /// The Morse coordinate is undefined at u = v = 0.
    #[error("singular point: u = v = 0{}", at.map(|s| format!(" at s = {s}")).unwrap_or_default())]
    Singular { at: Option<f64> },

    #[error("observable requires a real oscillator frequency, got {0}")]
    UnsupportedChart(num_complex::Complex64),

    /// Quadrature or eigen solver failed to converge.
    #[error("numerical diagnostic: {0}")]
    Numerical(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
