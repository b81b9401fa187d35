//! Config parsing, file formats and subcommand logic for the `mexhat`
//! binary, kept in a library so tests can drive it without a process.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod signal;
pub mod validate;

pub use error::{CliError, Result};
