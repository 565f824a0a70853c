//! `bcsums`: compute cotangent sums and related quantities, verify the
//! reciprocity identities, and write coefficient tables.

mod compute;
mod output;
mod parse;
mod table;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use bcsums::recip::{PanelRule, QuadratureConfig};
use bcsums::PrecisionConfig;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use output::{Format, Output};

#[derive(Debug, Parser)]
#[command(name = "bcsums", version, about = "Cotangent sums, period functions and reciprocity checks")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Significant decimal digits of the numeric backend (15 or 16).
    #[arg(long, global = true, default_value_t = 16)]
    precision_digits: u32,
    /// Absolute error target for series and quadrature.
    #[arg(long, global = true)]
    target_err: Option<f64>,
    /// Fixed truncation height for line integrals.
    #[arg(long, global = true)]
    quad_height: Option<f64>,
    /// Panel rule: gauss-legendre-N or adaptive-simpson.
    #[arg(long, global = true, default_value = "gauss-legendre-20", value_parser = parse_rule)]
    quad_rule: PanelRule,
    /// Abscissa of the vertical integration line.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overwrite an existing --out file.
    #[arg(long, global = true)]
    force: bool,
}

fn parse_rule(s: &str) -> Result<PanelRule, String> {
    s.parse().map_err(|e: bcsums::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one quantity.
    Compute {
        #[command(subcommand)]
        target: compute::Target,
    },
    /// Check an identity over a sweep of parameters, one report per tuple.
    Verify(verify::VerifyArgs),
    /// Write a table of period polynomial coefficients or reciprocity values.
    Table(table::TableArgs),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(bcsums::Error),
    Io(String, std::io::Error),
}

impl From<bcsums::Error> for CliError {
    fn from(e: bcsums::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(what, e) => write!(f, "{what}: {e}"),
        }
    }
}

/// Precision and quadrature settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub precision: PrecisionConfig,
    pub quad: QuadratureConfig,
    pub target: Option<f64>,
}

impl Ctx {
    fn new(g: &GlobalOpts) -> Result<Self, CliError> {
        let mut precision = PrecisionConfig {
            working_digits: g.precision_digits,
            ..PrecisionConfig::default()
        };
        let mut quad = QuadratureConfig {
            epsilon: g.epsilon,
            truncation_height: g.quad_height,
            panel_rule: g.quad_rule,
            ..QuadratureConfig::default()
        };
        if let Some(t) = g.target_err {
            precision.target_abs_err = t;
            quad.target_abs_err = t;
        }
        precision.validate()?;
        quad.validate()?;
        Ok(Ctx { precision, quad, target: g.target_err })
    }

    /// Settings for a check with pass budget `budget`, unless a target was given.
    pub fn for_budget(&self, budget: f64) -> Ctx {
        if self.target.is_some() {
            return *self;
        }
        let mut c = *self;
        c.quad.target_abs_err = (budget / 100.0).max(1e-13);
        c.precision.target_abs_err = (budget / 1000.0).max(1e-13);
        c
    }

    pub fn echo(&self) -> serde_json::Value {
        json!({ "precision": self.precision, "quadrature": self.quad })
    }
}

fn run(cli: Cli) -> Result<bool, (CliError, bool)> {
    let g = &cli.global;
    let in_verify = matches!(cli.command, Command::Verify(_));
    let ctx = Ctx::new(g).map_err(|e| (e, false))?;
    output::check_target(g.out.as_deref(), g.force).map_err(|e| (e, false))?;
    let out = match cli.command {
        Command::Compute { target } => compute::run(&target, &ctx).map(Output::Record),
        Command::Verify(args) => verify::run(&args, &ctx).map(Output::Reports),
        Command::Table(args) => table::run(&args).map(Output::Table),
    }
    .map_err(|e| (e, in_verify))?;
    output::emit(&out, g.format, g.out.as_deref()).map_err(|e| (e, false))?;
    Ok(match &out {
        Output::Reports(rs) => rs.iter().all(|r| r.pass),
        _ => true,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err((e, in_verify)) => {
            eprintln!("error: {e}");
            // an unmet accuracy target during a check counts as a failed check
            let precision = matches!(e, CliError::Lib(bcsums::Error::Precision(_)));
            ExitCode::from(if precision && in_verify { 1 } else { 2 })
        }
    }
}
