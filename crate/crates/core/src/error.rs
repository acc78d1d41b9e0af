// SPDX-License-Identifier: Apache-2.0
//! Error type shared by every module of the crate.

use std::path::PathBuf;

/// Failures raised while building graphs, parsing inputs or evaluating metrics.
#[derive(Debug, thiserror::Error)]
pub enum GamError {
    /// Structurally invalid input (ids out of range, negative weights, empty sets, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A metric was handed the wrong kind of labels.
    #[error("type error: {0}")]
    Type(String),

    /// A malformed line in a text input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A class with no member nodes in the evaluated node set.
    #[error("input error: class {class} has no member nodes")]
    EmptyClass { class: u32 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl GamError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        GamError::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        GamError::Parse { line, message: msg.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        GamError::Io { path: path.into(), source }
    }

    /// Process exit code used by the command-line tool: 1 for bad input, 2 for internal bugs.
    pub fn exit_code(&self) -> i32 {
        match self {
            GamError::Invariant(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = GamError> = std::result::Result<T, E>;
