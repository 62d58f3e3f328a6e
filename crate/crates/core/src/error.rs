//! Error taxonomy shared by every module.
//!
//! `Input` means the caller handed us something malformed, `Budget` means a
//! size guard refused the computation (always overridable by raising the
//! guard), and `Invariant` means one of the library's internal cross-checks
//! failed — the latter should never fire and indicates a bug here, not in
//! the caller.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
