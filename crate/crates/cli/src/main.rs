//! `nestalg`: JSON front-end for nest algebra computations.
//!
//! Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 on
//! input errors.

mod c00;
mod commands;
mod encode;
mod input;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map};

use commands::{AlgBasis, Check, Decompose, DecomposeMode, Dual, Ordsum, Radical, Reflexivity};
use input::{load, spec_field, InputResult};
use report::Report;
use suites::{Params, Suite};

const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Parser)]
#[command(name = "nestalg", version, about = "Exact computations with nest algebras")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a nest spec and print its chain dimensions and atoms.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// A basis of Alg N.
    AlgBasis {
        #[arg(long)]
        input: PathBuf,
    },
    /// Rank, idempotent or strict-approximant decomposition of an operator.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "rank")]
        mode: DecomposeMode,
    },
    /// The radical and the strictly triangular ideal.
    Radical {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of sampled non-members given exclusion witnesses.
        #[arg(long, default_value_t = 3)]
        cases: usize,
    },
    /// The dual nest of annihilators.
    Dual {
        #[arg(long)]
        input: PathBuf,
    },
    /// Reflexivity certificates over a small finite field.
    Reflexivity {
        #[arg(long)]
        input: PathBuf,
    },
    /// Ordinal sum of two nests, optionally classifying an operator.
    Ordsum {
        /// Two nest specs, in order.
        #[arg(long, num_args = 1, required = true)]
        input: Vec<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Symbolic support nests on c00.
    C00 {
        /// One catalog nest; all of them when absent.
        #[arg(long)]
        nest: Option<String>,
    },
    /// Run a property suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
}

fn execute(command: Command) -> InputResult<Report> {
    match command {
        Command::Check { input } => {
            let spec = load(&input)?;
            commands::dispatch(spec_field(&spec)?, Check { spec })
        }
        Command::AlgBasis { input } => {
            let spec = load(&input)?;
            commands::dispatch(spec_field(&spec)?, AlgBasis { spec })
        }
        Command::Decompose { input, matrix, mode } => {
            let spec = load(&input)?;
            let matrix = load(&matrix)?;
            commands::dispatch(spec_field(&spec)?, Decompose { spec, matrix, mode })
        }
        Command::Radical { input, seed, cases } => {
            let spec = load(&input)?;
            commands::dispatch(spec_field(&spec)?, Radical { spec, seed, samples: cases })
        }
        Command::Dual { input } => {
            let spec = load(&input)?;
            commands::dispatch(spec_field(&spec)?, Dual { spec })
        }
        Command::Reflexivity { input } => {
            let spec = load(&input)?;
            commands::dispatch(spec_field(&spec)?, Reflexivity { spec })
        }
        Command::Ordsum { input, matrix } => {
            let [a, b] = <[PathBuf; 2]>::try_from(input)
                .map_err(|v| format!("ordsum takes two --input files, got {}", v.len()))?;
            let (first, second) = (load(&a)?, load(&b)?);
            let (f1, f2) = (spec_field(&first)?, spec_field(&second)?);
            if f1 != f2 {
                return Err(nestalg::Error::FieldMismatch { left: f1, right: f2 }.to_string());
            }
            let matrix = matrix.map(|m| load(&m)).transpose()?;
            commands::dispatch(f1, Ordsum { first, second, matrix })
        }
        Command::C00 { nest } => {
            let names = match nest {
                Some(n) => vec![n],
                None => c00::catalog_names().into_iter().map(str::to_string).collect(),
            };
            let mut report = Report::new("c00");
            let mut results = Map::new();
            for name in names {
                let (payload, verdicts) = c00::analyze(&name)?;
                results.insert(name, payload);
                report.verdicts.extend(verdicts);
            }
            report.results = results.into();
            Ok(report)
        }
        Command::Verify { suite, max_dim, seed, cases } => {
            let params = Params { seed, cases, max_dim };
            let mut report = Report::new("verify");
            let mut results = Map::new();
            for s in suite.members() {
                let out = suites::run(s, params)?;
                results.insert(s.name().to_string(), out.results);
                report.verdicts.extend(out.verdicts);
            }
            report.results = json!({
                "suite": suite.name(),
                "seed": seed,
                "cases": cases,
                "suites": results,
            });
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let report = match execute(cli.command) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = report.to_json_string();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for v in report.verdicts.iter().filter(|v| !v.pass) {
        eprintln!("FAIL {}", v.property);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
