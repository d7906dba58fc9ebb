//! File formats, parallel verification suites, report documents and
//! golden snapshots on top of `djkm-core`.

pub mod config;
pub mod error;
pub mod format;
pub mod report;
pub mod snapshot;
pub mod states;
pub mod suites;

pub use error::CliError;
