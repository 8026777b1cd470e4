use std::fmt;
use std::path::{Path, PathBuf};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Validation violations, or a domain operation refused its input.
    pub const DOMAIN: i32 = 1;
    pub const USAGE: i32 = 2;
    /// A file could not be read, parsed or written.
    pub const INPUT: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    /// A syntax or content error inside a file, with its 1-based position.
    #[error("{}:{line}:{column}: {message}", path.display())]
    Input { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Input { .. } => exit::INPUT,
            CliError::Usage(_) => exit::USAGE,
            CliError::Domain(_) => exit::DOMAIN,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn input(path: &Path, line: usize, column: usize, message: impl fmt::Display) -> Self {
        CliError::Input { path: path.to_path_buf(), line, column, message: message.to_string() }
    }

    pub fn domain(e: impl fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}
