use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or structurally invalid input (graph, multiplicities, weights, matrices).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested enumeration would exceed the configured work budget.
    #[error("instance too large: needs about {needed:.3e} operations, budget is {cap:.3e}{hint}")]
    TooLarge { needed: f64, cap: f64, hint: String },

    /// A certified answer was requested but the instance lies outside the zero-free region.
    #[error("no certificate: {0}")]
    NoCertificate(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn too_large(needed: f64, cap: f64) -> Self {
        Error::TooLarge { needed, cap, hint: String::new() }
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 1,
            Error::TooLarge { .. } | Error::NoCertificate(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::TooLarge { .. } => "too_large",
            Error::NoCertificate(_) => "no_certificate",
        }
    }
}
