//! Command-line front end for `lrcx`: construct codes, print bounds, verify
//! recovering families, and run the coloring and repair experiments.
//!
//! Exit codes: 0 on success, 1 when a checked property fails, 2 on usage,
//! parse, or parameter errors. Coordinates are printed one-based.

pub mod commands;
pub mod matrix_file;

pub use commands::{run, Cli};
pub use matrix_file::{parse, parse_bytes, render, ParseError};
