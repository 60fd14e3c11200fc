//! Command-line front end for `ising-exact`: run configuration, report
//! rendering, subcommand handlers and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod output;
