//! Command-line front end for `galois-quantum`.
//!
//! Every command is a pure function from its arguments to a rendered
//! document, so the binary only parses flags, writes the text and maps errors
//! to exit codes. Output is deterministic: struct fields serialize in
//! declaration order and floats always use 17 significant digits.

pub mod app;
pub mod commands;
mod error;
pub mod format;
pub mod spec;

pub use app::{run, Cli, Output};
pub use error::CliError;
pub use spec::{ParseError, SystemSpec};
