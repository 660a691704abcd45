//! Command-line front end for `homcon-core`: report builders, renderers
//! and argument handling. The binary is a thin wrapper around [`cli::run`].

pub mod cli;
pub mod render;
pub mod report;
