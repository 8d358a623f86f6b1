//! Command-line front end: expression parsing and subcommands.

mod app;
pub mod parse;

pub use app::{run, EXIT_FAILED, EXIT_INTERNAL, EXIT_OK, EXIT_PARSE};
