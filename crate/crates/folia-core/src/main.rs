//! Command-line front end for the transverse-geometry engine.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use folia_core::document::{self, ExampleName, ExampleParams};
use folia_core::report::{self, ReportFormat};

#[derive(Parser)]
#[command(
    name = "folia",
    version,
    about = "Transverse geometry and tautness diagnostics for homogeneous Riemannian foliations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate an input document (algebra and foliation) without
    /// computing geometry
    Check { file: PathBuf },
    /// Run the full pipeline and print the tautness report
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Residual tolerance; overrides the document field and
        /// FOLIA_TOLERANCE
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Generate a built-in example document
    Example {
        /// One of: carriere, hrw7, heisenberg
        name: String,
        /// Integer matrix trace for carriere (>= 3)
        #[arg(long)]
        trace: Option<u32>,
        /// cosh(k) for hrw7; 2*coshk must be an integer >= 3
        #[arg(long)]
        coshk: Option<f64>,
        #[arg(long)]
        n1: Option<f64>,
        #[arg(long)]
        n2: Option<f64>,
        /// Write the document to a file instead of stdout
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Rescale the transverse metric of a document by a positive factor
    Rescale {
        file: PathBuf,
        #[arg(long)]
        factor: f64,
        #[arg(long)]
        emit: PathBuf,
    },
}

/// FOLIA_TOLERANCE provides the default tolerance when neither the
/// --tolerance flag nor the document specifies one.
fn env_tolerance() -> Result<Option<f64>, String> {
    match std::env::var("FOLIA_TOLERANCE") {
        Ok(raw) => {
            let value: f64 = raw
                .parse()
                .map_err(|_| format!("FOLIA_TOLERANCE is not a number: {raw:?}"))?;
            if !(value > 0.0) || !value.is_finite() {
                return Err(format!(
                    "FOLIA_TOLERANCE must be positive and finite, got {raw:?}"
                ));
            }
            Ok(Some(value))
        }
        Err(_) => Ok(None),
    }
}

fn read_document(path: &Path) -> Result<document::InputDocument, (String, i32)> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| (format!("cannot read {}: {err}", path.display()), 3))?;
    document::parse_input(&text).map_err(|err| (err.to_string(), 3))
}

fn run() -> Result<i32, (String, i32)> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file } => {
            let doc = read_document(&file)?;
            let outcome = report::run_check(&doc);
            print!("{}", outcome.text);
            Ok(outcome.exit_code)
        }
        Command::Report {
            file,
            format,
            tolerance,
        } => {
            let format: ReportFormat = format.into();
            let doc = match read_document(&file) {
                Ok(doc) => doc,
                Err((message, code)) => {
                    // Structured output even for parse failures in JSON mode.
                    if format == ReportFormat::Json {
                        let outcome = report::render_error(format, "ParseError", &message, code);
                        print!("{}", outcome.text);
                        return Ok(code);
                    }
                    return Err((message, code));
                }
            };
            let env_tol = env_tolerance().map_err(|msg| (msg, 3))?;
            let tol_override = tolerance.or(if doc.tolerance.is_none() { env_tol } else { None });
            let outcome = report::run_report(&doc, format, tol_override);
            print!("{}", outcome.text);
            Ok(outcome.exit_code)
        }
        Command::Example {
            name,
            trace,
            coshk,
            n1,
            n2,
            emit,
        } => {
            let name: ExampleName = name.parse().map_err(
                |err: document::DocumentError| (err.to_string(), 3))?;
            let params = ExampleParams {
                trace,
                coshk,
                n1,
                n2,
            };
            let doc = document::generate_example(name, params)
                .map_err(|err| (err.to_string(), 3))?;
            let json = doc.to_json();
            match emit {
                Some(path) => std::fs::write(&path, format!("{json}\n"))
                    .map_err(|err| (format!("cannot write {}: {err}", path.display()), 3))?,
                None => println!("{json}"),
            }
            Ok(0)
        }
        Command::Rescale { file, factor, emit } => {
            let doc = read_document(&file)?;
            let rescaled = doc
                .rescaled(factor)
                .map_err(|err| (err.to_string(), 1))?;
            std::fs::write(&emit, format!("{}\n", rescaled.to_json()))
                .map_err(|err| (format!("cannot write {}: {err}", emit.display()), 3))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err((message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
