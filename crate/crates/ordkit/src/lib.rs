//! File formats and command-line front end for `ordkit-core`.
//!
//! [`describe`] parses group, ordering and certificate descriptors, [`json`]
//! encodes elements, reports, tables and spectra, and [`cli`] runs the
//! subcommands.

pub mod cli;
pub mod describe;
pub mod error;
pub mod json;

pub use error::CliError;
