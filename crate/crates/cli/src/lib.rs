//! Command-line front end for `qdeform-core`: every subcommand builds an
//! output [`Record`] and writes it as JSON or CSV.

pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use output::{Cell, Record, Table};

/// Exit code for invalid input.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code when two independent computations disagree.
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inconsistent(_) => EXIT_INCONSISTENT,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

impl From<qdeform_core::Error> for CliError {
    fn from(e: qdeform_core::Error) -> Self {
        match e {
            qdeform_core::Error::Inconsistent { .. } => CliError::Inconsistent(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "qdeform",
    version,
    about = "Structure functions, representations and spectra of the (q;α,β,γ;ν)-deformed oscillator"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file. With csv, one file per table: `<stem>.<table>.csv`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// f(n) by closed form and by recurrence.
    Structure(commands::structure::Args),
    /// Positivity regime of the Fock structure function.
    Positivity(commands::positivity::Args),
    /// Defining relations, power identity and Casimir on a truncated Fock rep.
    Verify(commands::verify::Args),
    /// Class of the representation with the given invariants.
    Classify(commands::classify::Args),
    /// Spectrum of the position operator for the q-Hermite family.
    Qspectrum(commands::qspectrum::Args),
    /// Energy levels, spacing and asymptotics of the free Hamiltonian.
    Energy(commands::energy::Args),
    /// A named deformation mapped into the unified family.
    Reduce(commands::reduce::Args),
}

pub fn execute(cmd: &Command) -> Result<Record, CliError> {
    match cmd {
        Command::Structure(a) => commands::structure::run(a),
        Command::Positivity(a) => commands::positivity::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Classify(a) => commands::classify::run(a),
        Command::Qspectrum(a) => commands::qspectrum::run(a),
        Command::Energy(a) => commands::energy::run(a),
        Command::Reduce(a) => commands::reduce::run(a),
    }
}

fn emit(cli: &Cli, rec: &Record, out: &mut dyn Write) -> Result<(), CliError> {
    match (cli.format, &cli.out) {
        (Format::Json, None) => out.write_all(output::render_json(rec).as_bytes())?,
        (Format::Csv, None) => out.write_all(output::render_csv_stream(rec)?.as_bytes())?,
        (Format::Json, Some(p)) => output::write_json_file(rec, p)?,
        (Format::Csv, Some(p)) => {
            output::write_csv_files(rec, p)?;
        }
    }
    Ok(())
}

/// Folds a clap diagnostic into one line, dropping the usage and help hints.
fn one_line(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:"))
        .filter(|l| !l.is_empty() && !l.starts_with("For more information"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs one invocation, writing the record to `out` (unless `--out` is
/// given) and diagnostics to `err`. Returns the process exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", one_line(&e.to_string()));
            return EXIT_VALIDATION;
        }
    };
    let result = execute(&cli.command).and_then(|rec| {
        emit(&cli, &rec, out)?;
        Ok(rec)
    });
    match result {
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// [`run_with`] on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
