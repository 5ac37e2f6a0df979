//! Command-line front end: argument and config parsing, dispatch to the core
//! library, report emission and exit-code mapping.

pub mod args;
pub mod check;
pub mod commands;
pub mod config;
pub mod format;

use std::fs;

use clap::Parser;
use gamma_mu::ErrorClass;
use thiserror::Error;

pub use args::{Command, Format, RunConfig};
pub use check::{run_suite, CheckSummary};
pub use commands::{dispatch, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_REFUSAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gamma_mu::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Precondition => EXIT_PRECONDITION,
                ErrorClass::NonConvergence => EXIT_NONCONVERGENCE,
                ErrorClass::Refusal => EXIT_REFUSAL,
            },
            CliError::Usage(_) | CliError::Io(_) => EXIT_PRECONDITION,
        }
    }
}

/// Exit code with what the process would print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `argv` (including the program name), merging `--config`, and runs it.
pub fn run_from_args<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = match config::expand(argv.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(e) => return Outcome::failure(e.exit_code(), e.to_string()),
    };
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_PRECONDITION
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

/// Runs one parsed configuration.
pub fn run(cfg: &RunConfig) -> Outcome {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Outcome::failure(EXIT_PRECONDITION, "--threads must be at least 1".into());
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return Outcome::failure(EXIT_PRECONDITION, format!("thread pool: {e}")),
    };
    pool.install(|| run_in_pool(cfg))
}

fn emit(cfg: &RunConfig, body: String) -> Result<String, CliError> {
    match &cfg.out {
        Some(path) => {
            fs::write(path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn run_in_pool(cfg: &RunConfig) -> Outcome {
    if let Command::Check {
        suite,
        inject_fault,
    } = &cfg.command
    {
        let summary = run_suite(*suite, *inject_fault);
        let body = match cfg.format {
            Format::Json => {
                serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"
            }
            Format::Csv => format::csv_table(
                &["invariant", "passed"],
                summary
                    .results
                    .iter()
                    .map(|r| vec![r.name.to_string(), r.passed.to_string()]),
            ),
        };
        let table = summary.table();
        let (stdout, mut stderr) = match &cfg.out {
            Some(_) => match emit(cfg, body) {
                Ok(_) => (table, String::new()),
                Err(e) => return Outcome::failure(e.exit_code(), e.to_string()),
            },
            None if cfg.format == Format::Csv => (body, String::new()),
            None => (table, String::new()),
        };
        let code = match summary.first_failure() {
            Some(f) => {
                stderr.push_str(&format!("first failing invariant: {}\n", f.name));
                EXIT_CHECK_FAILED
            }
            None => EXIT_OK,
        };
        return Outcome {
            code,
            stdout,
            stderr,
        };
    }

    let report = match dispatch(&cfg.command) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(e.exit_code(), e.to_string()),
    };
    let body = match cfg.format {
        Format::Json => {
            serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n"
        }
        Format::Csv => match &report.csv {
            Some(csv) => csv.clone(),
            None => {
                return Outcome::failure(
                    EXIT_PRECONDITION,
                    format!("{} has no CSV form", cfg.command.name()),
                )
            }
        },
    };
    let stdout = match emit(cfg, body) {
        Ok(s) => s,
        Err(e) => return Outcome::failure(e.exit_code(), e.to_string()),
    };
    if let Some(reason) = &report.refusal {
        return Outcome {
            code: EXIT_REFUSAL,
            stdout,
            stderr: format!("refused: {reason}\n"),
        };
    }
    if let Some(reason) = &report.unconverged {
        return Outcome {
            code: EXIT_NONCONVERGENCE,
            stdout,
            stderr: format!("not converged: {reason}\n"),
        };
    }
    Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}
