//! File-based command-line surface over `toto-core`.
//!
//! Every command writes its outputs, plus the [`config::RunConfig`] that
//! produced them, into one directory. Exit codes: 0 success, 1 usage error,
//! 2 computation error, 3 a verification check failed.

pub mod cli;
pub mod config;
pub mod error;
pub mod json;
pub mod output;

pub use cli::{run_from, EXIT_COMPUTATION, EXIT_FINDING, EXIT_OK, EXIT_USAGE};
