//! Command-line front end: argument parsing, input grammar and JSON reports.

mod commands;
pub mod parse;

pub use commands::{exit_code, execute, Cli, Command, Outcome};
