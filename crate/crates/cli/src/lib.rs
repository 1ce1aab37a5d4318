//! Command-line front end for `inclined-core`.

pub mod app;
pub mod report;

pub use app::{run, Cli, ExitCode};
