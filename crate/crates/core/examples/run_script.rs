//! Runs a workbench script and prints its text and JSON reports.
//!
//! `cargo run --example run_script -- scripts/zmod12.gpif`
use gpif::cli::{run_script, OutputFormat, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scripts/zmod8.gpif").to_string());
    let text = std::fs::read_to_string(&path)?;

    let text_out = run_script(&text, &RunOptions::default());
    print!("{}", text_out.output);
    let json_out = run_script(&text, &RunOptions { format: OutputFormat::Json, expect_pass: false });
    print!("{}", json_out.output);
    std::process::exit(text_out.exit_code);
}
