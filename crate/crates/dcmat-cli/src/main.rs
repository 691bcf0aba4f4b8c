//! `dcmat` — compute with double-constant matrices from the shell.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input parse error,
//! 3 data-shape error, 4 domain error. Nothing else is ever returned.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

mod bench;
mod commands;
mod input;
mod json;
mod verify;

/// Errors a subcommand can report, keyed to the exit-code contract.
#[derive(Debug)]
pub enum CmdError {
    /// Exit 2: the input text could not be parsed.
    Parse(String),
    /// Exit 3: parsed fine but the data has the wrong shape.
    Shape(String),
    /// Exit 4: a mathematical precondition failed.
    Domain(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Parse(_) => 2,
            CmdError::Shape(_) => 3,
            CmdError::Domain(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Parse(m) | CmdError::Shape(m) | CmdError::Domain(m) => m,
        }
    }
}

impl From<dcmat::Error> for CmdError {
    fn from(e: dcmat::Error) -> Self {
        use dcmat::Error::*;
        match e {
            ZeroDimension
            | EmptyMatrix
            | EmptyGroup { .. }
            | EmptySequence
            | InsufficientData { .. }
            | LengthMismatch { .. }
            | DimensionMismatch { .. }
            | PartitionMismatch { .. }
            | ConstantsLengthMismatch { .. }
            | BadBufferLength { .. }
            | AllocationOverflow { .. }
            | RankDeficient { .. } => CmdError::Shape(e.to_string()),
            NonFinite { .. }
            | DomainViolation { .. }
            | Singular { .. }
            | RhoOutOfRange { .. }
            | ProportionalBasis { .. }
            | ImaginaryResidue { .. }
            | NegativeBetweenTerm { .. } => CmdError::Domain(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "dcmat",
    version,
    about = "Closed-form computation with double-constant matrices",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Center a numeric matrix by columns (default), rows, or both.
    Center(CenterArgs),
    /// Split a pooled sum of squares into within- and between-group parts.
    SsDecomp(SsDecompArgs),
    /// Sample variance of a column, optionally adjusted for equicorrelation.
    Variance(VarianceArgs),
    /// Apply a matrix function (inverse, sqrt, exp, log, power) in closed form.
    Matfun(MatfunArgs),
    /// Classify a double-constant matrix and report its invariants.
    Classify(ClassifyArgs),
    /// Time structured operations against their dense equivalents.
    Bench(BenchArgs),
    /// Run the full identity suite and report each check.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct CenterArgs {
    /// Center rows instead of columns.
    #[arg(long, conflicts_with = "both")]
    rows: bool,
    /// Center rows and columns.
    #[arg(long)]
    both: bool,
    /// Skip the first input record.
    #[arg(long)]
    header: bool,
    /// Whitespace-delimited input instead of CSV.
    #[arg(long)]
    ws: bool,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Input file; defaults to standard input ("-" also reads stdin).
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SsDecompArgs {
    /// Column (0 or 1) holding the group label; without this flag groups
    /// are separated by blank lines.
    #[arg(long)]
    group_col: Option<usize>,
    #[arg(long)]
    header: bool,
    #[arg(long)]
    ws: bool,
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VarianceArgs {
    /// Known equicorrelation parameter; adds the adjusted estimate.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    #[arg(long)]
    header: bool,
    #[arg(long)]
    ws: bool,
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct MatfunArgs {
    /// Matrix dimension.
    #[arg(long)]
    n: usize,
    /// Diagonal constant.
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Off-diagonal constant.
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    /// One of: inv, sqrt, exp, log, pow:<y>.
    #[arg(long = "fn", value_parser = commands::parse_matfun)]
    function: commands::MatFun,
    /// Zero tolerance for classifying the result.
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
}

#[derive(clap::Args)]
struct ClassifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    /// Zero tolerance for the class and rank decisions.
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Comma-separated matrix dimensions.
    #[arg(long = "n-list", value_delimiter = ',', default_value = "4,16,64,256")]
    n_list: Vec<usize>,
    /// Timing repetitions per (n, operation); medians are reported.
    #[arg(long, default_value_t = 5)]
    trials: usize,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Seed for the randomized identity checks.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Largest matrix dimension exercised.
    #[arg(long = "max-n", default_value_t = 24)]
    max_n: usize,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CmdError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CmdError::Parse(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| CmdError::Parse(format!("cannot read standard input: {e}")))?;
            Ok(buffer)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome: Result<String, CmdError> = match cli.command {
        Command::Center(args) => read_input(&args.input).and_then(|text| {
            let mode = if args.both {
                commands::CenterMode::Both
            } else if args.rows {
                commands::CenterMode::Rows
            } else {
                commands::CenterMode::Columns
            };
            commands::run_center(&text, args.header, args.ws, mode, args.format)
        }),
        Command::SsDecomp(args) => read_input(&args.input)
            .and_then(|text| commands::run_ss_decomp(&text, args.header, args.ws, args.group_col)),
        Command::Variance(args) => read_input(&args.input)
            .and_then(|text| commands::run_variance(&text, args.header, args.ws, args.rho)),
        Command::Matfun(args) => {
            commands::run_matfun(args.n, args.a, args.t, args.function, args.tol)
        }
        Command::Classify(args) => commands::run_classify(args.n, args.a, args.t, args.tol),
        Command::Bench(args) => bench::run(&args.n_list, args.trials).map_err(CmdError::from),
        Command::Verify(args) => {
            let report = verify::run_checks(args.seed, args.max_n, &verify::standard_checks());
            print!("{}", report.rendered());
            if let Some(failure) = report.first_failure() {
                eprintln!("verification failed: {failure}");
                std::process::exit(1);
            }
            println!("all {} checks passed", report.len());
            std::process::exit(0);
        }
    };
    match outcome {
        Ok(output) => {
            print!("{output}");
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
