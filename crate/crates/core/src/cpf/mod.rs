//! The XML certificate dialect.
//!
//! Elements carry no attributes; every value is element text. Terms are
//! written in prefix form, `<funapp><name>f</name><arg>…</arg></funapp>` or
//! `<var>x</var>`. Inside `<proof>` anything unrecognized or malformed is
//! read as an unknown proof step rather than failing; everywhere else the
//! vocabulary is enforced. The full element reference is in the README.

mod read;
mod write;

use thiserror::Error;

pub use read::parse_certificate;
pub use write::{serialize_certificate, STYLESHEET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CpfError {
    /// The input is not well-formed XML.
    #[error("line {line}, column {column}: {reason}")]
    Parse { line: u32, column: u32, reason: String },
    /// Well-formed, but not the certificate vocabulary.
    #[error("{path}: {reason}")]
    Schema { path: String, reason: String },
}

impl CpfError {
    pub(crate) fn schema(path: impl Into<String>, reason: impl Into<String>) -> Self {
        CpfError::Schema { path: path.into(), reason: reason.into() }
    }
}

/// Structural check only: empty exactly when [`parse_certificate`] succeeds.
pub fn validate_schema(bytes: &[u8]) -> Vec<CpfError> {
    parse_certificate(bytes).err().into_iter().collect()
}
