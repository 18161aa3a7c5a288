//! File formats, reports, benchmarks and the command-line front end for
//! `lved-core`.

pub mod bench;
pub mod cli;
pub mod io;
pub mod report;
