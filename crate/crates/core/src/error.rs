//! Error type shared by all algebra modules.

use std::fmt;

/// Errors raised by algebra operations.
///
/// `Usage` marks caller mistakes (mismatched contexts, bad dimensions,
/// out-of-range indices); `Domain` marks inputs outside an operation's
/// mathematical domain (non-unit constant term, missing rational division,
/// odd Grassmann exponent, ...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    Usage(String),
    Domain(String),
}

impl AlgebraError {
    pub fn usage(msg: impl Into<String>) -> Self {
        AlgebraError::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        AlgebraError::Domain(msg.into())
    }
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Usage(msg) => write!(f, "usage error: {msg}"),
            AlgebraError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for AlgebraError {}
