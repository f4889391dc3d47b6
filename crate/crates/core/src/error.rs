use thiserror::Error;

/// Errors raised while building or analysing set systems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}` in ground set")]
    DuplicateLabel(String),

    #[error("ground set of {n} elements exceeds the limit of {max} for this operation")]
    Capacity { n: usize, max: usize },

    #[error("operands are defined over different ground sets")]
    GroundMismatch,

    #[error("subset {bits:#b} has members outside a ground set of {n} elements")]
    OutOfRange { bits: u32, n: usize },

    #[error("invalid {what}: {reason}")]
    Invalid { what: String, reason: String },

    #[error("precondition `{property}` failed (witness {witness})")]
    Precondition { property: String, witness: String },

    #[error("minimal-generator map is not a function: {image} has minimal generators {generators}")]
    GammaNotFunction { image: String, generators: String },

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(what: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what: what.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
