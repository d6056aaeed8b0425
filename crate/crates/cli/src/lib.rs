//! Library side of the `gk` command: file formats and subcommands.

pub mod commands;
pub mod format;
