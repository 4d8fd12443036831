//! File formats, report rendering, built-in self tests and the command-line
//! front end for the `dgs-core` certifier.

pub mod cli;
pub mod corpus;
pub mod fixtures;
pub mod format;
pub mod json;
pub mod selftest;
pub mod text;
