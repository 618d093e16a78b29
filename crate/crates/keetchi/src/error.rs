use thiserror::Error;

/// Errors surfaced by the engine and its data stores.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed name: {0}")]
    MalformedName(String),

    #[error("malformed message: {0}")]
    MalformedMessage(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("clock skew: time {now} precedes {reference}")]
    ClockSkew { now: f64, reference: f64 },

    #[error("message `{name}` expired at {expires_at}, now {now}")]
    Expired {
        name: String,
        expires_at: f64,
        now: f64,
    },
}

impl Error {
    pub(crate) fn invalid_param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }
}
