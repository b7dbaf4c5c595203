//! `ramify`: batch front end for the ramification kernels.

mod commands;
mod render;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_PRECISION_CAP: i64 = 1 << 16;

#[derive(Debug, Parser)]
#[command(name = "ramify", version, about = "Ramification groups, conductors and Euler characteristics")]
pub struct Cli {
    /// Spec file (JSON, or TOML by extension); `-` reads JSON from stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Starting Laurent precision; doubled on demand up to the cap.
    #[arg(long, global = true)]
    precision: Option<i64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Warn on unknown fields and skip datum validation.
    #[arg(long, global = true)]
    unchecked: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build a local extension: filtration, uniformizer, different three ways.
    Extension,
    /// Herbrand functions, jumps, Hasse-Arf.
    Herbrand,
    /// Irreducible character table.
    Chars,
    /// Artin and Swan characters with their decompositions.
    Artin,
    /// Swan conductor three ways and break profile.
    Swan,
    /// Euler characteristics of a cover and its consistency reports.
    Gos,
    /// Randomized property suite.
    Verify {
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Spec(String),
    /// A library error raised while building inputs.
    #[error("{0}")]
    SpecLib(ramify::Error),
    #[error("{0}")]
    Lib(ramify::Error),
}

impl CliError {
    pub fn from_lib(e: ramify::Error) -> Self {
        CliError::Lib(e)
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io(_) => "cli.io",
            CliError::Spec(_) => "cli.spec",
            CliError::SpecLib(e) | CliError::Lib(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Spec(_) | CliError::SpecLib(_) => 2,
            CliError::Lib(e) if e.is_mismatch() => 3,
            CliError::Lib(_) => 1,
        }
    }

    fn is_insufficient_precision(&self) -> bool {
        matches!(self, CliError::Lib(e) | CliError::SpecLib(e) if e.is_insufficient_precision())
    }
}

fn precision_cap() -> Result<i64, CliError> {
    match std::env::var("RAMIFY_PRECISION_CAP") {
        Ok(v) => v.trim().parse::<i64>().ok().filter(|&c| c > 0).ok_or_else(|| CliError::Spec(format!("bad RAMIFY_PRECISION_CAP `{v}`"))),
        Err(_) => Ok(DEFAULT_PRECISION_CAP),
    }
}

fn read_spec(cli: &Cli) -> Result<Option<spec::SpecFile>, CliError> {
    let Some(path) = &cli.input else { return Ok(None) };
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    let (spec, unknown) = spec::parse(&text, Some(path), cli.unchecked)?;
    for field in unknown {
        eprintln!("warning: ignoring unknown field `{field}`");
    }
    Ok(Some(spec))
}

fn run(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let spec = read_spec(cli)?;
    let cap = precision_cap()?;
    let mut precision = cli.precision.or(spec.as_ref().and_then(|s| s.precision)).unwrap_or(ramify::local_field::DEFAULT_PRECISION);
    if precision <= 0 {
        return Err(CliError::Spec(format!("precision must be positive, got {precision}")));
    }
    loop {
        let ctx = commands::Context { spec: spec.as_ref(), precision, seed: cli.seed, unchecked: cli.unchecked };
        match commands::dispatch(cli.command, &ctx) {
            Err(e) if e.is_insufficient_precision() && precision < cap => precision = (precision * 2).min(cap),
            other => return other,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let _ = writeln!(std::io::stdout().lock(), "{}", render::render(&outcome.report, cli.format));
            match outcome.mismatch {
                Some(what) => {
                    eprintln!("error[cli.cross_check_mismatch]: {what}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
