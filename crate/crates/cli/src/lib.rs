//! Serialization and subcommands behind the `bdtriple` binary.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;

pub use document::Document;
pub use error::CliError;
pub use report::Report;
