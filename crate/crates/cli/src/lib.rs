//! Command-line front end for `qdist`: fixture parsing, dispatch and reports.

pub mod app;
pub mod fixture;
pub mod report;
