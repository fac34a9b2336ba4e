//! Command-line front end for `fibwalk`.
//!
//! Every command renders a deterministic artifact: CSV with a header row and
//! `\n` line endings, or pretty-printed JSON with keys in a fixed order.
//! Exit codes are 0 on success, 2 for rejected arguments and 3 for I/O
//! failures.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::path::PathBuf;

pub use args::{Cli, Command, RunConfig};
pub use error::{CliError, Result};

/// Executes a parsed command line.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => {
            let bytes = commands::simulate(&args)?;
            output::write_artifact(args.output.as_deref(), &bytes)
        }
        Command::Spectrum(args) => {
            let bytes = commands::spectrum(&args)?;
            output::write_artifact(args.output.as_deref(), &bytes)
        }
        Command::Limit(args) => {
            let bytes = commands::limit(&args)?;
            output::write_artifact(args.output.as_deref(), &bytes)
        }
        Command::Compare(args) => {
            let bytes = commands::compare(&args)?;
            output::write_artifact(args.output.as_deref(), &bytes)
        }
        Command::Exponent(args) => {
            let (csv, fit) = commands::exponent(&args)?;
            output::write_artifact(args.output.as_deref(), &csv)?;
            let fit_path = args.fit_output.clone().or_else(|| {
                args.output.as_ref().map(|p| {
                    let mut s = p.clone().into_os_string();
                    s.push(".fit.json");
                    PathBuf::from(s)
                })
            });
            match fit_path {
                Some(path) => output::write_artifact(Some(&path), &fit),
                None => {
                    eprint!("{}", String::from_utf8_lossy(&fit));
                    Ok(())
                }
            }
        }
    }
}
