//! Command-line front end, file formats and the parallel thickness scan
//! for [`gasket_core`].
//!
//! * [`json`], [`csv`], [`svg`]: byte-stable artifact writers.
//! * [`scan`]: multi-threaded thickness scan with a schedule-independent result.
//! * [`cli`]: argument parsing, [`cli::RunConfig`] and [`cli::run`].

pub mod cli;
pub mod csv;
mod failure;
mod io;
pub mod json;
pub mod scan;
pub mod svg;

pub use failure::Failure;
pub use io::write_atomic;
