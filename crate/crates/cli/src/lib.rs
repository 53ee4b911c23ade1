//! File formats, reports and command implementations behind the
//! `lcp-certify` binary.

pub mod commands;
pub mod error;
pub mod parse;
pub mod render;

pub use commands::{run, Command, Format, Outcome, RunConfig, TheoremChoice};
pub use error::CliError;
