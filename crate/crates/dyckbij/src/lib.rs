//! Command-line front end and `std`-only formats for `dyckbij-core`.

pub mod cli;
pub mod format;

pub use cli::{run, timed_verify};
