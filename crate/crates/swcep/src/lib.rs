//! File formats, JSON reports and the command-line driver for `swcep-core`.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{run, Cli, Command, Run};
pub use error::CliError;
