//! Error type shared by all modules.
//!
//! Three failure classes matter to callers and map onto distinct process
//! exit codes in the CLI:
//!
//! * [`Error::Config`] — the request itself is invalid (bad field
//!   parameters, unsupported group, out-of-range degree, …); exit code 2.
//! * [`Error::Division`] — an exact division was requested that does not
//!   hold; the message carries a rendered witness of the failure.
//! * [`Error::Internal`] — an internal cross-check failed (for example the
//!   symbolic rank and its random-specialization verification disagree
//!   twice in a row); exit code 3.  These indicate a bug, never bad input.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("exact division failed: {0}")]
    Division(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error onto.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Division(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}
