use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zigzag_hh_cli::commands;
use zigzag_hh_cli::output::Render;
use zigzag_hh_cli::spec::{parse_range, CliError, JobSpec, MethodChoice};

/// Thread count for the worker pool; never changes any result.
const THREADS_VAR: &str = "ZIGZAG_HH_THREADS";

#[derive(Parser)]
#[command(
    name = "zigzag-hh",
    version,
    about = "Bigraded Hochschild cohomology of zigzag algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of Λ^n and of its trace space for n ≤ N
    Preproj {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max: usize,
    },
    /// dim HH^{2,q} by one or all methods
    Hh2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "a..b", allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value = "ginzburg")]
        method: MethodChoice,
    },
    /// Search 0 < q ≤ N for nonzero HH^{2,q}
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max: usize,
    },
    /// Cocycle, coboundary and Stasheff checks for m4 on Z(D~4)
    AinftyCheck {
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// multiplies the default coefficients (1, -1, 1, -1)
        #[arg(long, conflicts_with = "coefficients")]
        scale: Option<i64>,
        /// coefficients on the four rotations of the cycle, e.g. 1,1,1,1
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coefficients: Option<Vec<i64>>,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Common {
    /// catalog label (A5, D~4, ...) or graph file
    #[arg(long)]
    graph: String,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// `auto` or an orientation file
    #[arg(long, default_value = "auto")]
    orientation: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    out: Format,
    /// write to FILE instead of stdout
    #[arg(long = "output", value_name = "FILE")]
    file: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn job(
    command: &str,
    c: &Common,
    q: Option<(i64, i64)>,
    max: Option<usize>,
    method: Option<MethodChoice>,
) -> JobSpec {
    JobSpec {
        command: command.into(),
        graph: c.graph.clone(),
        characteristic: c.characteristic,
        q,
        max,
        method,
        orientation: c.orientation.clone(),
    }
}

fn emit<T: Serialize + Render>(value: &T, out: &Output) -> Result<(), CliError> {
    let text = match out.out {
        Format::Table => value.render(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
            s.push('\n');
            s
        }
    };
    let written = match &out.file {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| CliError::Invalid(format!("cannot write output: {e}")))
}

fn positive(name: &str, n: usize) -> Result<usize, CliError> {
    if n == 0 {
        return Err(CliError::Invalid(format!("--{name} must be at least 1")));
    }
    Ok(n)
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Preproj { common, max } => {
            let spec = job("preproj", &common, None, Some(positive("max", max)?), None);
            emit(&commands::preproj(&spec)?, &common.output)?;
        }
        Command::Hh2 { common, q, method } => {
            let spec = job("hh2", &common, Some(parse_range(&q)?), None, Some(method));
            emit(&commands::hh2(&spec)?, &common.output)?;
        }
        Command::Classify { common, max } => {
            let spec = job("classify", &common, None, Some(positive("max", max)?), None);
            emit(&commands::classify(&spec)?, &common.output)?;
        }
        Command::AinftyCheck {
            characteristic,
            scale,
            coefficients,
            max_arity,
            output,
        } => {
            let coeffs = match (scale, coefficients) {
                (_, Some(v)) => <[i64; 4]>::try_from(v.as_slice()).map_err(|_| {
                    CliError::Invalid(format!(
                        "--coefficients needs exactly 4 values, got {}",
                        v.len()
                    ))
                })?,
                (k, None) => {
                    let k = k.unwrap_or(1);
                    [k, -k, k, -k]
                }
            };
            let report = commands::ainfty_check(characteristic, coeffs, max_arity)?;
            emit(&report, &output)?;
            if !report.succeeded() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // only fails if a pool already exists, which it cannot here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
