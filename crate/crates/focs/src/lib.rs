//! JSON file formats and the command-line front end for `focs-core`.

pub mod cli;
pub mod json;
