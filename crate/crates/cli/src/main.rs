use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mexhat_cli::commands::{cmd_build, cmd_cwt, cmd_sample};
use mexhat_cli::config::{OutputFormat, RunConfig};
use mexhat_cli::validate::{run_validation, Level, ValidationContext};
use mexhat_cli::{CliError, Result};

#[derive(Parser)]
#[command(
    name = "mexhat",
    version,
    about = "Hermite-Gaussian wavelets and their transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the wavelet and report envelope, residual, norm and crossings
    Build(IoArgs),
    /// Sample the wavelet on its configured range
    Sample(IoArgs),
    /// Transform a sampled signal over the configured (mu, s) grid
    Cwt(IoArgs),
    /// Run the built-in checks
    Validate {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
    },
}

#[derive(Args)]
struct IoArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides `output` from the config; stdout when neither is set
    #[arg(long)]
    output: Option<PathBuf>,
    /// Overrides `format` from the config
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

impl IoArgs {
    fn load(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(out) = &self.output {
            cfg.output_path = Some(out.clone());
        }
        if let Some(fmt) = self.format {
            cfg.output_format = fmt;
        }
        Ok(cfg)
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                source: e,
            }),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build(args) => {
            let cfg = args.load()?;
            let report = cmd_build(&cfg.wavelet)?;
            emit(cfg.output_path.as_deref(), &report.render())?;
            if !report.admissible {
                eprintln!(
                    "error: wavelet is not admissible (residual {})",
                    report.residual
                );
            }
            Ok(report.admissible)
        }
        Command::Sample(args) => {
            let cfg = args.load()?;
            let text = cmd_sample(&cfg.wavelet, cfg.output_format)?;
            emit(cfg.output_path.as_deref(), &text)?;
            Ok(true)
        }
        Command::Cwt(args) => {
            let cfg = args.load()?;
            let out = cmd_cwt(&cfg)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            emit(cfg.output_path.as_deref(), &out.csv)?;
            Ok(true)
        }
        Command::Validate { level } => {
            let report = run_validation(level, &ValidationContext::default());
            print!("{}", report.render());
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
