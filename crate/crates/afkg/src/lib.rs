//! Command-line front end for afkg-core: file loading, output formats and
//! the `afkg` subcommands.

pub mod cli;
pub mod error;
pub mod input;

pub use cli::run;
pub use error::{exit, CliError};
