//! Command-line front end for `nonlinear-sl2`.
//!
//! [`run`] takes the full argument vector and returns the process exit code:
//! 0 on success, 1 when a computation fails or a verified identity does not
//! hold, 2 on a usage error.

mod commands;
pub mod parse;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use render::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] nonlinear_sl2::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot encode CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nlsl2",
    version,
    about = "Polynomial deformations of sl(2): coefficients, representations and checks"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Tolerance of numeric checks (Frobenius norm).
    #[arg(long, default_value_t = 1e-10, value_parser = parse::real, global = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between commutator (beta) and Casimir (alpha) coefficients.
    Coeffs(CoeffsArgs),
    /// Build the matrices of an irreducible representation.
    Rep(SpecArgs),
    /// Run the verification suite for one representation.
    Verify(SpecArgs),
    /// Count the admissible shifted families of the Higgs or quadratic algebra.
    Families(FamiliesArgs),
    /// Coproduct, counit and antipode checks.
    Hopf(HopfArgs),
    /// Checks of the q-deformed (U_q) limit.
    Qlimit(QlimitArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CoeffsArgs {
    /// Comma-separated beta_0, beta_1, ...
    #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = parse::rational_list)]
    pub alpha_from_beta: Option<parse::RationalList>,
    /// Comma-separated alpha_1, alpha_2, ...
    #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = parse::rational_list)]
    pub beta_from_alpha: Option<parse::RationalList>,
    /// Row eps_1(k), ..., eps_k(k) of the power-sum expansion coefficients.
    #[arg(long, value_name = "K")]
    pub epsilon: Option<usize>,
    /// Bernoulli numbers B_1, ..., B_N (positive convention).
    #[arg(long, value_name = "N")]
    pub bernoulli: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    Sl2,
    Polynomial,
    Higgs,
    Quadratic,
    Uq,
    Qbase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Branch {
    Unshifted,
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, value_enum)]
    pub family: RepKind,
    /// Spin, e.g. 3/2.
    #[arg(long, value_parser = parse::half_int)]
    pub j: nonlinear_sl2::HalfInt,
    /// Casimir coefficients alpha_1, alpha_2, ... (polynomial, qbase) or the
    /// single quadratic parameter.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = parse::rational_list)]
    pub alpha: Option<parse::RationalList>,
    /// Cubic coefficient of the Higgs algebra.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::rational)]
    pub beta: Option<nonlinear_sl2::Rational>,
    /// Shift of the J3 spectrum; overrides --branch and the quadratic default.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::real)]
    pub gamma: Option<f64>,
    /// Which Higgs shift to use.
    #[arg(long, value_enum, default_value_t = Branch::Unshifted)]
    pub branch: Branch,
    /// q = exp(delta) for the uq and qbase families.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::real)]
    pub delta: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Higgs,
    Quadratic,
}

#[derive(Debug, Args)]
pub struct FamiliesArgs {
    #[arg(long, value_enum)]
    pub family: ScanKind,
    #[arg(long, value_parser = parse::half_int)]
    pub j: nonlinear_sl2::HalfInt,
    /// Higgs parameter values, comma separated.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = parse::rational_list)]
    pub beta: Option<parse::RationalList>,
    /// Quadratic parameter values, comma separated.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = parse::rational_list)]
    pub alpha: Option<parse::RationalList>,
}

#[derive(Debug, Args)]
pub struct HopfArgs {
    /// Spin of the first tensor factor.
    #[arg(long, value_parser = parse::half_int)]
    pub j: nonlinear_sl2::HalfInt,
    /// Spin of the second factor; defaults to --j.
    #[arg(long, value_parser = parse::half_int)]
    pub j2: Option<nonlinear_sl2::HalfInt>,
    /// Higgs deformation parameter of the deformed coproduct.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::rational, conflicts_with = "alpha")]
    pub beta: Option<nonlinear_sl2::Rational>,
    /// Casimir coefficients of a general polynomial deformation.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true, value_parser = parse::rational_list)]
    pub alpha: Option<parse::RationalList>,
    /// Parameter of the quadratic algebra coproduct.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::rational)]
    pub quadratic: Option<nonlinear_sl2::Rational>,
}

#[derive(Debug, Args)]
pub struct QlimitArgs {
    #[arg(long, value_parser = parse::half_int)]
    pub j: nonlinear_sl2::HalfInt,
    #[arg(long, allow_hyphen_values = true, value_parser = parse::real)]
    pub delta: f64,
    /// Last order kept in the series expansion.
    #[arg(long, default_value_t = 25)]
    pub trunc: usize,
}

/// Parse `argv` (program name first), execute, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text) {
                eprintln!("error: {e}");
                return e.exit_code();
            }
            if outcome.all_pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Rendered output and whether every check in it passed.
pub struct Outcome {
    pub text: String,
    pub all_pass: bool,
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Coeffs(a) => commands::coeffs(a, cli.format),
        Command::Rep(a) => commands::rep(a, cli.format),
        Command::Verify(a) => commands::verify(a, cli.format, cli.tol),
        Command::Families(a) => commands::families(a, cli.format),
        Command::Hopf(a) => commands::hopf(a, cli.format, cli.tol),
        Command::Qlimit(a) => commands::qlimit(a, cli.format, cli.tol),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
