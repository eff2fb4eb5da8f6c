//! `magicsq`: inspect composition algebras, build and analyze Lie
//! algebras, and print or verify the magic-square tables.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 bad input.

mod commands;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser)]
#[command(name = "magicsq", version, about = "Magic-square Lie algebras from composition algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for rank and invariance sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, env = "MAGICSQ_THREADS")]
    threads: Option<usize>,
    /// TOML file supplying defaults for any flag given here.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    /// JSON.
    #[value(alias = "json")]
    #[serde(alias = "json")]
    Structured,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplication table, star, derivations and identity checks.
    Algebra(commands::AlgebraArgs),
    /// Build a Lie algebra and write it to a file.
    Build(commands::BuildArgs),
    /// Jacobi, Killing form, rank and atlas candidates for a file.
    Analyze(commands::AnalyzeArgs),
    /// Atlas candidates for a file or for a (dim, character) pair.
    Identify(commands::IdentifyArgs),
    /// A magic square at fixed n, checked cell by cell.
    Square(commands::SquareArgs),
    /// Verify the realization tables.
    Tables(commands::TablesArgs),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    format: Option<Format>,
    seed: Option<u64>,
    threads: Option<usize>,
    verbose: Option<u8>,
    pub max_n: Option<usize>,
    pub cap: Option<usize>,
    pub trials: Option<usize>,
    pub samples: Option<usize>,
}

fn load_config(path: &Path) -> Result<Config, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub struct Settings {
    pub format: Format,
    pub seed: u64,
    pub verbose: u8,
    pub config: Config,
}

/// A command's stdout text and whether every requested check passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

/// Exit code and message for commands that could not run.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(m: impl ToString) -> Self {
        Failure {
            code: 2,
            message: m.to_string(),
        }
    }

    pub fn check(m: impl ToString) -> Self {
        Failure {
            code: 1,
            message: m.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.global.config.as_deref().map(load_config).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.global.threads.or(config.threads) {
        if rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            eprintln!("error: cannot start {t} threads");
            return ExitCode::from(2);
        }
    }
    let settings = Settings {
        format: cli.global.format.or(config.format).unwrap_or(Format::Text),
        seed: cli.global.seed.or(config.seed).unwrap_or(0),
        verbose: cli.global.verbose.max(config.verbose.unwrap_or(0)),
        config,
    };
    let result = match &cli.cmd {
        Command::Algebra(a) => commands::algebra(a, &settings),
        Command::Build(a) => commands::build(a, &settings),
        Command::Analyze(a) => commands::analyze(a, &settings),
        Command::Identify(a) => commands::identify(a, &settings),
        Command::Square(a) => commands::square(a, &settings),
        Command::Tables(a) => commands::tables(a, &settings),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
