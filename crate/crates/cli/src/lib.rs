//! File formats, instance generation and the command-line driver for the
//! `a2sat-core` solver.

pub mod commands;
pub mod dimacs;
pub mod generate;

pub use commands::{run, Cli, EXIT_ERROR, EXIT_FOUND, EXIT_NO};
pub use dimacs::{parse, render, InputDocument, ParseError, ParseErrorKind};
pub use generate::{generate, GenError, GenParams};
