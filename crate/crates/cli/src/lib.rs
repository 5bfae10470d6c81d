//! Command line front end. Reads one symbol spec per invocation and writes
//! a JSON report, a dense matrix or a CSV sweep.
//!
//! Exit codes: 0 success, 1 invalid input or a non-Fredholm symbol where
//! Fredholmness is required, 2 numeric failure or a failed verification.

pub mod commands;
pub mod error;
pub mod report;
pub mod spec;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
pub use spec::{JumpSpec, SmoothSpec, SymbolSpec};
