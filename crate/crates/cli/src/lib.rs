//! Command implementations behind the `mlsfr` binary.

pub mod commands;
pub mod output;
pub mod scenario;
