//! `circapprox`: circulant approximations of symmetric Toeplitz matrices from the command line.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! `0` success, `1` a `verify` suite failed, `2` invalid arguments or input
//! files, `3` domain errors (for example `gs` with `ρ = 1`), `4` output could
//! not be written.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use circulant_core::io::{
    format_complex_csv, format_complex_json, format_dense_csv, format_report_csv,
    format_report_json, format_row_csv, format_row_json, parse_row_text, REPORT_CSV_HEADER,
};
use circulant_core::verify::{Level, Verifier};
use circulant_core::{
    circulant_eigenvalues, common_correlation, gs_circulant, nearest_circulant,
    nearest_eigenvalues, symmetric_circulant_eigenvalues, ApproximationMethod, Circulant,
    ResidualReport, SymmetricToeplitz,
};

pub mod sweep;

pub use sweep::SweepRequest;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_OUTPUT: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(circulant_core::Error),
    Output(std::io::Error),
}

impl CliError {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Output(_) => EXIT_OUTPUT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Output(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

impl From<circulant_core::Error> for CliError {
    fn from(e: circulant_core::Error) -> Self {
        match e {
            circulant_core::Error::Parse(m) => CliError::Usage(m),
            other => CliError::Domain(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "circapprox",
    version,
    about = "Circulant approximations of symmetric Toeplitz matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first row (or dense form) of an approximating circulant.
    Approximate(ApproximateArgs),
    /// Print circulant eigenvalues indexed k = 0..M-1.
    Eigvals(EigvalsArgs),
    /// Print the residual report for one (method, rho, M) cell.
    Residual(ResidualArgs),
    /// Write the (method, rho, M) residual grid as CSV.
    Sweep(SweepArgs),
    /// Run the oracle and property suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Nearest,
    Gs,
    Common,
}

impl From<MethodArg> for ApproximationMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Nearest => ApproximationMethod::Nearest,
            MethodArg::Gs => ApproximationMethod::Gs,
            MethodArg::Common => ApproximationMethod::Common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

/// Either an exponential `(ρ, M)` pair or a row read from a file.
#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, requires = "m", conflicts_with = "row_file")]
    pub rho: Option<f64>,
    #[arg(long, requires = "rho")]
    pub m: Option<usize>,
    /// CSV line or JSON array holding a first row.
    #[arg(long, value_name = "PATH")]
    pub row_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ApproximateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "nearest")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Print the full matrix instead of its first row.
    #[arg(long)]
    pub dense: bool,
}

#[derive(Debug, Args)]
pub struct EigvalsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Used with --rho/--m; a row file is read as a circulant first row.
    #[arg(long, value_enum, default_value = "nearest")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "nearest")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = sweep::DEFAULT_RHOS)]
    pub rhos: Vec<f64>,
    #[arg(long, default_value_t = sweep::DEFAULT_M_MIN)]
    pub m_min: usize,
    #[arg(long, default_value_t = sweep::DEFAULT_M_MAX)]
    pub m_max: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["nearest", "gs"])]
    pub methods: Vec<MethodArg>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "quick")]
    pub level: LevelArg,
}

enum Input {
    Exponential { rho: f64, m: usize },
    Row(Vec<f64>),
}

fn read_input(args: &InputArgs) -> Result<Input, CliError> {
    match (args.rho, args.m, &args.row_file) {
        (Some(rho), Some(m), None) => Ok(Input::Exponential { rho, m }),
        (None, None, Some(path)) => Ok(Input::Row(read_row_file(path)?)),
        _ => Err(CliError::usage("give either --rho and --m, or --row-file")),
    }
}

fn read_row_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_row_text(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn exponential_circulant(
    method: ApproximationMethod,
    rho: f64,
    m: usize,
) -> Result<Circulant, CliError> {
    Ok(match method {
        ApproximationMethod::Nearest => nearest_circulant(&SymmetricToeplitz::exponential(rho, m)?),
        ApproximationMethod::Gs => {
            SymmetricToeplitz::exponential(rho, m)?;
            gs_circulant(rho, m)?
        }
        ApproximationMethod::Common => Circulant::new(common_correlation(rho, m)?.row())?,
    })
}

fn row_only_nearest(method: ApproximationMethod) -> Result<(), CliError> {
    if method != ApproximationMethod::Nearest {
        return Err(CliError::usage(format!(
            "method '{method}' needs exponential input (--rho/--m), not --row-file"
        )));
    }
    Ok(())
}

fn cmd_approximate(args: &ApproximateArgs) -> Result<String, CliError> {
    let method = ApproximationMethod::from(args.method);
    let c = match read_input(&args.input)? {
        Input::Exponential { rho, m } => exponential_circulant(method, rho, m)?,
        Input::Row(row) => {
            row_only_nearest(method)?;
            nearest_circulant(&SymmetricToeplitz::new(row)?)
        }
    };
    Ok(match (args.format, args.dense) {
        (Format::Csv, false) => format!("{}\n", format_row_csv(c.row())),
        (Format::Json, false) => format!("{}\n", format_row_json(c.row())),
        (Format::Csv, true) => format_dense_csv(&c.to_dense()),
        (Format::Json, true) => {
            let rows: Vec<Vec<f64>> = c.to_dense().rows().map(<[f64]>::to_vec).collect();
            format!(
                "{}\n",
                serde_json::to_string(&rows).expect("finite floats serialize")
            )
        }
    })
}

fn cmd_eigvals(args: &EigvalsArgs) -> Result<String, CliError> {
    let method = ApproximationMethod::from(args.method);
    let real = match read_input(&args.input)? {
        Input::Exponential { rho, m } if method == ApproximationMethod::Nearest => {
            nearest_eigenvalues(&SymmetricToeplitz::exponential(rho, m)?)
        }
        Input::Exponential { rho, m } => {
            symmetric_circulant_eigenvalues(&exponential_circulant(method, rho, m)?)?
        }
        Input::Row(row) => {
            let c = Circulant::new(row)?;
            if !c.is_symmetric() {
                let sys = circulant_eigenvalues(&c);
                return Ok(match args.format {
                    Format::Csv => format_complex_csv(sys.values()),
                    Format::Json => format!("{}\n", format_complex_json(sys.values())),
                });
            }
            symmetric_circulant_eigenvalues(&c)?
        }
    };
    Ok(match args.format {
        Format::Csv => format!("{}\n", format_row_csv(&real)),
        Format::Json => format!("{}\n", format_row_json(&real)),
    })
}

fn cmd_residual(args: &ResidualArgs) -> Result<String, CliError> {
    let method = ApproximationMethod::from(args.method);
    let report = match read_input(&args.input)? {
        Input::Exponential { rho, m } => ResidualReport::exponential(method, rho, m)?,
        Input::Row(row) => {
            row_only_nearest(method)?;
            ResidualReport::general(&SymmetricToeplitz::new(row)?)?
        }
    };
    Ok(match args.format {
        Format::Csv => format!("{REPORT_CSV_HEADER}\n{}\n", format_report_csv(&report)),
        Format::Json => format!("{}\n", format_report_json(&report)),
    })
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let req = SweepRequest {
        rho_values: args.rhos.clone(),
        m_min: args.m_min,
        m_max: args.m_max,
        methods: args.methods.iter().map(|&m| m.into()).collect(),
    };
    let text = sweep::render_csv(&req.run()?);
    match &args.out {
        Some(path) => fs::write(path, text).map_err(CliError::Output),
        None => out.write_all(text.as_bytes()).map_err(CliError::Output),
    }
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };

    let result = match &cli.command {
        Command::Approximate(a) => cmd_approximate(a).and_then(|s| emit(out, &s)),
        Command::Eigvals(a) => cmd_eigvals(a).and_then(|s| emit(out, &s)),
        Command::Residual(a) => cmd_residual(a).and_then(|s| emit(out, &s)),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Verify(a) => {
            let level = match a.level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let report = Verifier::new(a.seed, level).run();
            return match emit(out, &format!("{report}\n")) {
                Ok(()) if report.all_passed() => EXIT_OK,
                Ok(()) => {
                    for s in report.failed() {
                        let _ = writeln!(err, "failed suite {} ({})", s.id, s.name);
                    }
                    EXIT_VERIFY_FAILED
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
            };
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(CliError::Output)
}
