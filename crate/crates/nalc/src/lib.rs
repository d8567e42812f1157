//! Text formats and the command-line front end for `nalc-core`.

pub mod cli;
pub mod parser;

pub use nalc_core;
