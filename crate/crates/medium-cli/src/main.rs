use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use medium_classify::{MetaclassId, DEFAULT_SEPARATION};
use medium_cli::run::{self, Flags, GenerateArgs};
use medium_cli::{CliError, Report};

/// Classify, decompose and synthesize antisymmetric (2,2)-tensors on a
/// 4-manifold. Tensors are 6×6 matrices in the bivector basis
/// {01, 02, 03, 23, 31, 12}, row = output, column = input.
#[derive(Parser, Debug)]
#[command(name = "medium", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Relative tolerance (overrides the document's `tol`; default 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Force the rational path; fail if the input is not rational.
    #[arg(long, global = true)]
    exact: bool,
    /// Seed for `generate` and `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Metaclass, parameters and witnesses of a tensor document.
    Classify { input: Option<PathBuf> },
    /// Principal, skewon and axion parts.
    Decompose { input: Option<PathBuf> },
    /// Hodge star matrix of the document's `metric`.
    Hodge { input: Option<PathBuf> },
    /// A random realization of a metaclass, with its ground truth.
    Generate {
        /// Roman numeral or number, I..XXIII.
        #[arg(long)]
        class: MetaclassId,
        /// Which of the three equivalent forms to realize (1, 2 or 3); random if absent.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        variant: Option<u8>,
        /// Minimum gap between eigenvalues of different blocks.
        #[arg(long, default_value_t = DEFAULT_SEPARATION)]
        separation: f64,
    },
    /// Frame factorization of six two-forms, given as the columns of `matrix6`.
    Factor { input: Option<PathBuf> },
    /// Checks a witness `M` for `A ~ V`; accepts a classify report as input.
    Verify { input: Option<PathBuf> },
    /// Checks the index convention and golden cases.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Decompose { .. } => "decompose",
            Command::Hodge { .. } => "hodge",
            Command::Generate { .. } => "generate",
            Command::Factor { .. } => "factor",
            Command::Verify { .. } => "verify",
            Command::Selftest => "selftest",
        }
    }
}

/// Reads a file, or stdin when the path is absent or `-`.
fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            buf = std::fs::read(p).map_err(|e| CliError::precondition(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::precondition(format!("stdin: {e}")))?;
        }
    }
    Ok(buf)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let flags = Flags { tol: cli.tol, exact: cli.exact, seed: cli.seed };
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::precondition(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Classify { input } => run::run_classify(&read_input(input)?, &flags),
        Command::Decompose { input } => run::run_decompose(&read_input(input)?, &flags),
        Command::Hodge { input } => run::run_hodge(&read_input(input)?, &flags),
        Command::Factor { input } => run::run_factor(&read_input(input)?, &flags),
        Command::Verify { input } => run::run_verify(&read_input(input)?, &flags),
        Command::Selftest => run::run_selftest(&flags),
        Command::Generate { class, variant, separation } => {
            if !(separation.is_finite() && *separation >= 0.0) {
                return Err(CliError::precondition(format!("--separation must be nonnegative, got {separation}")));
            }
            let args = GenerateArgs { class: *class, variant: *variant, separation: *separation };
            run::run_generate(&args, &flags)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = execute(&cli).unwrap_or_else(|e| Report::error(cli.command.name(), &e));
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).unwrap_or_default() + "\n",
        Format::Text => report.text.clone(),
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
