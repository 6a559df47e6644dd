//! Library side of the `cliffrac` command: problem files, solve/check/eval
//! drivers and solution file formats. `main.rs` only parses arguments.

pub mod commands;
pub mod config;
mod error;
pub mod output;

pub use commands::{check, eval, solve, CheckReport, EvalPoint, SolveOptions, SolveReport};
pub use config::{Problem, ProblemConfig, SCHEMA_VERSION};
pub use error::CliError;
pub use output::{OutputFormat, Solution};

/// Environment variable naming the directory for relative output paths.
pub const OUTPUT_DIR_ENV: &str = "CLIFFRAC_OUTPUT_DIR";
