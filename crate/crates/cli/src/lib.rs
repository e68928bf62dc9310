//! Command-line front end for `designlab`: design file formats, the
//! report every command emits, the commands themselves and the built-in
//! acceptance suite.

pub mod commands;
pub mod format;
pub mod report;
pub mod selftest;

pub use commands::CliError;
pub use format::{parse_design, write_design, DesignFormat, ParseError};
pub use report::{Payload, Report};
