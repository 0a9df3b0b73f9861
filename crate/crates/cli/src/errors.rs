//! CLI-level errors with stable codes; core errors pass through with
//! their own codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {message}")]
    Config {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("{0}")]
    Core(#[from] gindex_core::Error),

    #[error("unknown preset \"{0}\"")]
    UnknownPreset(String),

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Io(String),

    #[error("weyl cache format version {found}, expected {expected}")]
    CacheVersion { found: u32, expected: u32 },

    #[error("weyl cache holds type {found}, expected {expected}")]
    CacheKey { found: String, expected: String },

    #[error("weyl cache unreadable: {0}")]
    CacheCorrupt(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "E_CONFIG",
            CliError::Core(e) => e.code(),
            CliError::UnknownPreset(_) => "E_PRESET",
            CliError::Usage(_) => "E_USAGE",
            CliError::Io(_) => "E_IO",
            CliError::CacheVersion { .. } => "E_CACHE_VERSION",
            CliError::CacheKey { .. } => "E_CACHE_KEY",
            CliError::CacheCorrupt(_) => "E_CACHE_CORRUPT",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
