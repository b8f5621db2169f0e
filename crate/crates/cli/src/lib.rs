//! Command-line front end for `doctrina-core`: text formats for doctrines,
//! valuations and decisions, and the commands behind the `doctrina` binary.

pub mod commands;
pub mod error;
pub mod format;

pub use commands::{CheckFlags, DecideOptions, GenKind, Output};
pub use error::CliError;
