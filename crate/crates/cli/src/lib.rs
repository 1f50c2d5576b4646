//! Command-line front end for the `facewise` library.

pub mod config;
pub mod report;
pub mod run;

pub use config::{Command, Emit, RunConfig};
pub use report::Report;
pub use run::{run, CliError};
