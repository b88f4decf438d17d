//! Command-line front end for `fkpp-core`: configuration, experiment
//! orchestration, CSV output and the claim-audit report.

pub mod claims;
pub mod commands;
pub mod config;
pub mod output;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use fkpp_core::zeroth::SurfaceMethod;

use commands::{CommandError, EXIT_OK, EXIT_USAGE};
use config::{load_config, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "fkpp", version, about = "Fisher-KPP approximate solutions, oracle comparisons and claim audits")]
pub struct Cli {
    /// `key = value` configuration file; defaults apply when omitted
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory, overriding `out_dir`
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Surface method for `surface` and `compare`
    #[arg(
        long,
        global = true,
        value_name = "NAME",
        default_value = "first_order_spectral",
        value_parser = ["rational_spectral", "first_order_spectral", "closed_form_spatial"]
    )]
    pub method: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Synthesize a solution surface and write it as CSV
    Surface,
    /// Run the successive approximations and the time-collapse audit
    Iterate,
    /// Run the full claim registry and write the reports
    Audit,
    /// Compare a surface with the finite-difference oracle
    Compare,
}

fn execute(cli: &Cli) -> Result<commands::CommandOutput, CommandError> {
    let cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    let out = cli.out.clone().unwrap_or_else(|| cfg.out_dir.clone());
    let method = SurfaceMethod::parse(&cli.method)
        .ok_or_else(|| CommandError::Usage(format!("unknown method `{}`", cli.method)))?;
    match cli.command {
        Command::Surface => commands::cmd_surface(&cfg, method, &out),
        Command::Iterate => commands::cmd_iterate(&cfg, &out),
        Command::Audit => commands::cmd_audit(&cfg, &out),
        Command::Compare => commands::cmd_compare(&cfg, method, &out),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code: 0 ok, 1 configuration or usage error, 2 numerical
/// failure.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(res) => {
            for line in &res.lines {
                let _ = writeln!(stdout, "{line}");
            }
            res.exit_code
        }
        Err(e) => {
            let _ = writeln!(stderr, "fkpp: {e}");
            e.exit_code()
        }
    }
}
