//! File formats, verification reports and the `rsvortex` command-line tool
//! on top of [`rsvortex_core`].
//!
//! Field specifications are JSON, curves are written as CSV or PLY, and
//! [`verify::verify`] runs every applicable consistency check on a field
//! and gathers the outcome in a [`report::VerificationReport`].

pub mod curves_io;
pub mod error;
pub mod report;
pub mod spec_file;
pub mod verify;

pub use error::{CliError, Result};
