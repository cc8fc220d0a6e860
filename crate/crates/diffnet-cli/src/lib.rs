//! IO, file formats, and report generation on top of `diffnet-core`.

pub mod io;
pub mod report;
