//! File formats, verification sweeps and the command-line front end for
//! `critset-core`.

pub mod checks;
pub mod cli;
pub mod corpus;
pub mod format;
pub mod report;
pub mod sweep;
