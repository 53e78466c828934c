//! Library half of the `kemmer` command-line tool.
//!
//! All output is deterministic: fixed column order and every float written in
//! scientific notation with 17 significant digits.

pub mod commands;
pub mod config;

use thiserror::Error;

pub use config::{ConfigError, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    ConfigFile(#[from] ConfigError),
    #[error(transparent)]
    Physics(#[from] kemmer::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("verification failed")]
    Verification,
}

impl CliError {
    /// 1 for failed verification or I/O, 2 for usage and configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification | CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
