//! File formats and command-line front end for `floatgeo-core`.
//!
//! Documents are JSON with numbers in shortest round-trip form, CSV with
//! one row per direction, or SVG figures of planar results.

pub mod cli;
pub mod error;
pub mod schema;
pub mod svg;
pub mod sweep;
pub mod table;
pub mod verify;

pub use error::{CliError, CliResult};
