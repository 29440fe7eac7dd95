//! Instance files, table output and the command-line front end for
//! [`mvgroup_core`].

pub mod cli;
pub mod config;
pub mod output;
pub mod suites;
