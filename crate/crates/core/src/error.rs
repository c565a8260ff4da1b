//! Errors shared by the decision engines.

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    /// The formula lies outside the fragment the operation can handle.
    #[error("unsupported fragment for {operation}: {detail}")]
    UnsupportedFragment {
        operation: &'static str,
        detail: String,
    },

    /// Truth-table enumeration is exact or refused, never approximate.
    #[error("refusing exhaustive enumeration over {count} atoms (limit {limit})")]
    TooManyAtoms { count: usize, limit: usize },
}

impl EngineError {
    pub fn fragment(operation: &'static str, detail: impl Into<String>) -> Self {
        EngineError::UnsupportedFragment {
            operation,
            detail: detail.into(),
        }
    }
}
