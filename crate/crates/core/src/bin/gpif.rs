use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gpif::cli::ast::FamilyMode;
use gpif::cli::{check_command, run_script, suite_command, OutputFormat, RunOptions};

#[derive(Parser)]
#[command(name = "gpif", version, about = "Prime extension filtrations and generalized prime ideal factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a script file.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Boolean queries without `expect` must evaluate to true.
        #[arg(long)]
        expect_pass: bool,
    },
    /// Check one property over the default instance family.
    Check {
        id: String,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "samples")]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check every property over the default family.
    Suite {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { file, format, expect_pass } => match std::fs::read_to_string(&file) {
            Ok(text) => run_script(
                &text,
                &RunOptions {
                    format: format.into(),
                    expect_pass,
                },
            ),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", file.display());
                return ExitCode::from(2);
            }
        },
        Command::Check {
            id,
            exhaustive,
            samples,
            seed,
            format,
        } => {
            let mode = match samples {
                Some(count) if !exhaustive => FamilyMode::Samples { count, seed },
                _ => FamilyMode::Exhaustive,
            };
            check_command(&id, &mode, format.into())
        }
        Command::Suite { format } => suite_command(format.into()),
    };
    print!("{}", outcome.output);
    ExitCode::from(outcome.exit_code as u8)
}
