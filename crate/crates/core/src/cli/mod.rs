//! The script language: syntax tree, parser and evaluator.

pub mod ast;
pub mod parse;
pub mod run;

pub use parse::{parse_script, ParseError};
pub use run::{check_command, evaluate, run_script, suite_command, OutputFormat, RunOptions, RunOutcome, RunReport};
