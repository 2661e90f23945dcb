//! Command-line harness around `nfact-core`: task dispatch, JSON/TSV output,
//! a content-addressed result cache and the acceptance suites.

pub mod cache;
pub mod error;
pub mod report;
pub mod suites;
pub mod tasks;
