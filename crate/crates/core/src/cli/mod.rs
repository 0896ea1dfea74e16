//! Command-line front end: file formats and command dispatch.

mod command;
pub mod format;

pub use command::{execute, Cli, Command, Method, Outcome};
