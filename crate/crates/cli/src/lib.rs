//! The `lca` command-line tool: argument handling, JSON output and the
//! verification ledger behind `lca report`.

pub mod commands;
pub mod json;
pub mod ledger;

pub use commands::{run, Cli, Outcome};
