use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bdtriple_cli::commands::{self, Output};
use bdtriple_cli::{CliError, Document, Report};
use bdtriple_core::exactlinalg::parse_rational;
use bdtriple_core::Rational;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bdtriple",
    version,
    about = "Exact construction and verification of bidiagonal triples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// The q with b = q^-2, as "p" or "p/q".
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// Inputs are paths to JSON documents; `-` reads stdin.
#[derive(Subcommand)]
enum Command {
    /// Check a triple or pair and print its parameter array.
    Verify { input: PathBuf },
    /// Print the parameter array document of a triple.
    ParamArray { input: PathBuf },
    /// Print the base of a triple, pair or parameter array.
    Base { input: PathBuf },
    /// Extend a pair to a triple.
    Extend {
        input: PathBuf,
        /// Eigenvalues of the new operator, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        target_sequence: Option<Vec<String>>,
    },
    /// Build a triple from a parameter array.
    Construct { input: PathBuf },
    /// Replace a triple by its affine-equivalent reduced triple.
    Reduce { input: PathBuf },
    /// Print the scalars of the fundamental relations.
    Relations { input: PathBuf },
    /// Decide whether two triples are isomorphic.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Modules for sl2 and U_q(sl2).
    #[command(subcommand)]
    Module(ModuleCommand),
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// The reduced triple of a segregated module spec.
    Build { input: PathBuf },
    /// The module spec of a reduced triple.
    Decompose { input: PathBuf },
}

fn read_document(path: &Path) -> Result<Document, CliError> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Document::parse(&text)
}

fn parse_q(q: Option<&str>) -> Result<Option<Rational>, CliError> {
    q.map(|s| parse_rational(s).map_err(|e| CliError::Parse(e.to_string())))
        .transpose()
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let q = parse_q(cli.q.as_deref())?;
    let q = q.as_ref();
    Ok(match &cli.command {
        Command::Verify { input } => Output::Report(commands::cmd_verify(&read_document(input)?)?),
        Command::ParamArray { input } => {
            Output::Document(commands::cmd_param_array(&read_document(input)?)?)
        }
        Command::Base { input } => Output::Report(commands::cmd_base(&read_document(input)?)?),
        Command::Extend {
            input,
            target_sequence,
        } => {
            let target: Option<Vec<Rational>> = target_sequence
                .as_ref()
                .map(|xs| {
                    xs.iter()
                        .map(|x| parse_rational(x).map_err(|e| CliError::Parse(e.to_string())))
                        .collect()
                })
                .transpose()?;
            Output::Document(commands::cmd_extend(
                &read_document(input)?,
                target.as_deref(),
                q,
            )?)
        }
        Command::Construct { input } => {
            Output::Document(commands::cmd_construct(&read_document(input)?, q)?)
        }
        Command::Reduce { input } => {
            Output::Document(commands::cmd_reduce(&read_document(input)?, q)?)
        }
        Command::Relations { input } => {
            Output::Report(commands::cmd_relations(&read_document(input)?, q)?)
        }
        Command::Isomorphic { first, second } => Output::Report(commands::cmd_isomorphic(
            &read_document(first)?,
            &read_document(second)?,
        )?),
        Command::Module(ModuleCommand::Build { input }) => {
            Output::Document(commands::cmd_module_build(&read_document(input)?)?)
        }
        Command::Module(ModuleCommand::Decompose { input }) => {
            Output::Document(commands::cmd_module_decompose(&read_document(input)?, q)?)
        }
    })
}

fn render(output: &Output, format: Format) -> String {
    match (output, format) {
        (Output::Document(d), Format::Human) => d.to_pretty(),
        (Output::Document(d), Format::Machine) => d.to_compact() + "\n",
        (Output::Report(r), Format::Human) => r.to_human(),
        (Output::Report(r), Format::Machine) => r.to_json(),
    }
}

fn render_error(e: &CliError, format: Format) -> String {
    let report = Report::new()
        .with("error", e.to_string())
        .with("reason", e.reason())
        .with("exit_code", e.exit_code());
    match format {
        Format::Human => format!("error: {e}\nreason: {}\n", e.reason()),
        Format::Machine => report.to_json(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let text = render(&output, cli.format);
            let written = match &cli.output {
                Some(path) => fs::write(path, text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprint!("{}", render_error(&e, cli.format));
            ExitCode::from(e.exit_code())
        }
    }
}
