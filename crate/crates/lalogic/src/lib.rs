//! Command-line front-end: argument handling, report output and the
//! structure file format.

pub mod cli;
pub mod structfile;

pub use cli::run;
