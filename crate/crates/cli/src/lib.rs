//! Command-line front end: tree files, reports, and command dispatch.

pub mod commands;
pub mod report;
pub mod treefile;

pub use commands::{run_command, Cli, CliError, Command, GlobalArgs};
pub use report::{Report, SCHEMA};
pub use treefile::{emit_tree_file, parse_tree_file, ParseError, TreeFile};
