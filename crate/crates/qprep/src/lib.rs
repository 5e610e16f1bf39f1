//! File formats, sweeps and the command-line front end for `qprep-core`.

pub mod cli;
pub mod gatelist;
pub mod input;
pub mod random;
pub mod report;
pub mod suites;
pub mod sweep;
