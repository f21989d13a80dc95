//! Argument parsing and dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use legendre_phase::coeffs::coefficients;
use legendre_phase::{solve, SamplePlan};

use crate::checks;
use crate::error::{CliError, CliResult};
use crate::eval::{coefficient_json, coefficient_table, eval, Method};
use crate::figures::{self, FigureKind, ALPHA_GRID_POINTS};
use crate::numbers::{parse_order_list, parse_real, parse_real_list};
use crate::output::Format;
use crate::tables::{self, default_degrees, default_orders, TableKind};

#[derive(Debug, Parser)]
#[command(
    name = "legendre-phase",
    version,
    about = "Legendre functions of large degree via a nonoscillatory phase expansion"
)]
pub struct Cli {
    /// Output format (default: json for eval/coeffs, csv otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate P, Q, psi and the phase derivative at one point.
    Eval {
        /// Degree (accepts a `pi` suffix, e.g. 1e3pi).
        #[arg(long, value_parser = parse_real)]
        nu: f64,
        /// Angle in (0, pi/2).
        #[arg(long, value_parser = parse_real)]
        theta: f64,
        /// Expansion order N (asymptotic) or term count M (stieltjes).
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, value_enum, default_value = "asymptotic")]
        method: Method,
    },
    /// Print the weights of the exponential sum.
    Coeffs {
        #[arg(long, value_parser = parse_real)]
        nu: f64,
        #[arg(long, default_value_t = 4)]
        terms: usize,
        /// Solve the moment system numerically even where closed forms exist.
        #[arg(long)]
        solve: bool,
    },
    /// Error or timing table, one row per degree.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        /// Comma-separated degrees (default 1e2,1e2pi,...,1e9).
        #[arg(long, value_name = "LIST")]
        nu: Option<String>,
        /// Orders, e.g. `2..=6` or `3,4` (default 2..=6; 3..=6 for timing).
        #[arg(long, value_name = "LIST")]
        terms: Option<String>,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Plot data.
    Figure {
        #[arg(value_enum)]
        which: FigureKind,
        #[arg(long, value_parser = parse_real, default_value = "1000")]
        nu: f64,
        /// Orders for error_vs_theta (default 2,3,4); a single order for alpha_prime (default 4).
        #[arg(long, value_name = "LIST")]
        terms: Option<String>,
        /// alpha_prime only: asymptotic or oracle.
        #[arg(long, value_enum, default_value = "asymptotic")]
        method: Method,
        /// alpha_prime only: grid size.
        #[arg(long, default_value_t = ALPHA_GRID_POINTS)]
        points: usize,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Run the oracle triangle and invariant checks.
    Selftest,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub n_uniform: usize,
    #[arg(long, default_value_t = 500)]
    pub n_endpoint: usize,
    #[arg(long, default_value_t = 36.0)]
    pub endpoint_scale: f64,
}

impl PlanArgs {
    pub fn plan(&self) -> SamplePlan {
        SamplePlan {
            seed: self.seed,
            n_uniform: self.n_uniform,
            n_endpoint: self.n_endpoint,
            endpoint_scale: self.endpoint_scale,
        }
    }
}

fn orders(terms: Option<&str>, default: impl FnOnce() -> Vec<usize>) -> CliResult<Vec<usize>> {
    terms.map_or_else(|| Ok(default()), parse_order_list)
}

fn single_order(terms: Option<&str>, default: usize) -> CliResult<usize> {
    match orders(terms, || vec![default])?.as_slice() {
        [n] => Ok(*n),
        _ => Err(CliError::Usage("alpha_prime takes a single order".into())),
    }
}

/// Runs one parsed command and returns the rendered output plus whether
/// every check passed (only `selftest` can report false).
pub fn render(cli: Cli) -> CliResult<(String, bool)> {
    let fmt = |default| cli.format.unwrap_or(default);
    let mut ok = true;
    let text = match cli.command {
        Command::Eval { nu, theta, terms, method } => {
            eval(nu, theta, terms, method)?.table().to_string(fmt(Format::Json))?
        }
        Command::Coeffs { nu, terms, solve: numeric } => {
            let set = if numeric { solve(terms, nu)? } else { coefficients(terms, nu)? };
            match fmt(Format::Json) {
                Format::Json => coefficient_json(&set)?,
                Format::Csv => coefficient_table(&set).to_string(Format::Csv)?,
            }
        }
        Command::Table { which, nu, terms, plan } => {
            let degrees = nu.as_deref().map_or_else(|| Ok(default_degrees()), parse_real_list)?;
            let orders = orders(terms.as_deref(), || default_orders(which))?;
            tables::table(which, &plan.plan(), &degrees, &orders)?.to_string(fmt(Format::Csv))?
        }
        Command::Figure { which, nu, terms, method, points, plan } => {
            let table = match which {
                FigureKind::ErrorVsTheta => {
                    let orders = orders(terms.as_deref(), || vec![2, 3, 4])?;
                    figures::error_vs_theta(nu, &orders, &plan.plan())?
                }
                FigureKind::AlphaPrime => {
                    figures::alpha_prime(nu, single_order(terms.as_deref(), 4)?, method, points)?
                }
            };
            table.to_string(fmt(Format::Csv))?
        }
        Command::Selftest => {
            let results = checks::all()?;
            ok = results.iter().all(checks::Check::passed);
            checks::report(&results).to_string(fmt(Format::Csv))?
        }
    };
    Ok((text, ok))
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Full command line to exit status. Errors go to stderr as a JSON object.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    let out = cli.out.clone();
    let result = render(cli).and_then(|(text, ok)| {
        emit(out.as_ref(), &text)?;
        if ok {
            Ok(())
        } else {
            Err(CliError::Numerical("selftest: one or more checks failed".into()))
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
