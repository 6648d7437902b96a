//! Command-line front end for the first-detection statistics library:
//! density tabulation, rate sweeps, trajectory ensembles, asymptotic
//! reports, optimal-rate search, and the acceptance suite.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use args::{Cli, Command, OutputFormat};
use error::CliError;
use output::write_bytes;
use std::path::PathBuf;

/// Appends a suffix to a base path (`base` -> `base.histogram.csv`).
fn with_suffix(base: &std::path::Path, suffix: &str) -> PathBuf {
    let mut s = base.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

/// Executes a parsed command, writing its outputs; errors map onto the
/// exit-code contract via [`CliError::exit_code`].
pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Pdf(a) => {
            let rendered = commands::pdf::run(&a)?;
            write_bytes(a.output.out.as_deref(), &rendered.table)?;
            // CSV tables are followed by the JSON summary on stdout; the
            // JSON format already embeds it.
            if rendered.format == OutputFormat::Csv {
                write_bytes(None, &rendered.summary)?;
            }
            Ok(())
        }
        Command::MeanSweep(a) => {
            let bytes = commands::mean_sweep::run(&a)?;
            write_bytes(a.output.out.as_deref(), &bytes)
        }
        Command::Simulate(a) => {
            let out = commands::simulate::run(&a)?;
            match &a.out {
                Some(base) => {
                    write_bytes(Some(&with_suffix(base, ".histogram.csv")), &out.histogram)?;
                    write_bytes(Some(&with_suffix(base, ".summary.json")), &out.summary)?;
                }
                None => {
                    write_bytes(None, &out.histogram)?;
                    write_bytes(None, &out.summary)?;
                }
            }
            match out.comparison_failure {
                Some(msg) => Err(CliError::Comparison(msg)),
                None => Ok(()),
            }
        }
        Command::Asymptotics(a) => {
            let bytes = commands::asymptotics::run(&a)?;
            write_bytes(a.output.out.as_deref(), &bytes)
        }
        Command::OptimalRate(a) => {
            let bytes = commands::optimal_rate::run(&a)?;
            write_bytes(a.output.out.as_deref(), &bytes)
        }
        Command::Accept(a) => {
            for &n in &a.only {
                if !(1..=12).contains(&n) {
                    return Err(CliError::Usage(format!(
                        "criterion numbers run 1-12, got {n}"
                    )));
                }
            }
            let (passed, failed) = acceptance::run_selected(&a.only);
            println!("{passed} passed, {failed} failed");
            if failed > 0 {
                Err(CliError::Comparison(format!(
                    "{failed} acceptance criteria failed"
                )))
            } else {
                Ok(())
            }
        }
    }
}
