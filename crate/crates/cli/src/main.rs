mod commands;
mod config;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flexgeom::{Budget, DividedPower, Error};
use serde::Deserialize;

use crate::config::{parse_rational, FileConfig, RunConfig};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
    /// A verification check failed; the report is still printed.
    Mismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Lib(Error::BudgetExceeded { .. }) => 3,
            CliError::Usage(_) | CliError::Lib(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "flexgeom", version, about = "Incidence geometry and flexy surfaces over finite fields")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest number of points a single scan may visit.
    #[arg(long, global = true)]
    budget_points: Option<u64>,
    /// Largest number of lines a single scan may visit.
    #[arg(long, global = true)]
    budget_lines: Option<u64>,
    /// Extension degree m for flexiness evidence over GF(q^m).
    #[arg(long, global = true)]
    ext: Option<u32>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Field for input files without a `# field:` header, e.g. `GF(5)` or `GF(2^2)`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Reading of `F_vv / 2` in characteristic 2.
    #[arg(long, global = true, value_enum)]
    divided_power: Option<DividedPowerArg>,
    /// TOML file with defaults for the options above and a `[decompose]` table.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DividedPowerArg {
    Standard,
    PaperLiteral,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a construction against its expected counts.
    Verify {
        #[arg(value_enum)]
        name: verify::Target,
        /// Characteristic; defaults to 2 (funny is fixed at 3).
        #[arg(long)]
        p: Option<u32>,
        /// Extension degree n of GF(p^n), general only; defaults to 3.
        #[arg(long)]
        n: Option<u32>,
        /// Override an expected value, `key=value`.
        #[arg(long = "expect", value_name = "KEY=VALUE")]
        expect: Vec<String>,
        /// Write the line family (heisenberg, general) to this file.
        #[arg(long)]
        write_lines: Option<PathBuf>,
        /// Write the rational points (heisenberg, general) to this file.
        #[arg(long)]
        write_points: Option<PathBuf>,
    },
    /// Points, lines, classification and flexiness of one surface.
    Analyze {
        /// A surface.json document.
        surface: Option<PathBuf>,
        /// Polynomial text instead of a document; needs `--field`.
        #[arg(long, conflicts_with = "surface")]
        poly: Option<String>,
        /// Hypotheses to vouch for: any of reduced, irreducible, non-flexy.
        #[arg(long, value_delimiter = ',')]
        attest: Vec<String>,
        /// Write the analyzed surface with cached counts to this file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Exhaustive search for flexy surfaces over GF(p).
    SearchFlexy {
        /// Characteristic of the base field.
        #[arg(long)]
        p: u32,
        /// Largest total degree to enumerate.
        #[arg(long)]
        max_degree: u32,
        /// Restrict to these monomials, e.g. `x^3*y,y^3,x`.
        #[arg(long, value_delimiter = ',')]
        support: Vec<String>,
    },
    /// A nonzero polynomial of least degree (or of degree at most `--degree`) vanishing on a point set.
    Vanish {
        /// Points file.
        #[arg(long)]
        points: PathBuf,
        /// Degree bound; without it the least degree is searched for.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Run the decomposition and emit its ledger.
    Decompose {
        /// Lines file.
        #[arg(long = "in")]
        lines: PathBuf,
        /// Points file; defaults to the union of the lines.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Distinguished points per line.
        #[arg(long = "N")]
        n: u64,
        /// Rational K; defaults to N^3 / |S|.
        #[arg(long = "K")]
        k: Option<String>,
        /// Write the full state to this file and print a summary.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 1 unless every ledger line passes.
        #[arg(long)]
        require_success: bool,
    },
    /// Incidence statistics of a line set and optional point set.
    Incidence {
        /// Lines file.
        #[arg(long)]
        lines: PathBuf,
        /// Points file; incidences default to the union of the lines.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Report whether at most this many lines lie in any plane.
        #[arg(long)]
        plane_bound: Option<usize>,
    },
}

fn run_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let defaults = Budget::default();
    let cfg = RunConfig {
        format: cli.format.or(file.format).unwrap_or(Format::Json),
        budget: Budget {
            points: cli.budget_points.or(file.budget_points).unwrap_or(defaults.points),
            lines: cli.budget_lines.or(file.budget_lines).unwrap_or(defaults.lines),
        },
        ext: cli.ext.or(file.ext).unwrap_or(2),
        seed: cli.seed.or(file.seed).unwrap_or(0),
        field: cli.field.clone().or(file.field.clone()),
        divided_power: match cli.divided_power {
            Some(DividedPowerArg::Standard) => DividedPower::Standard,
            Some(DividedPowerArg::PaperLiteral) => DividedPower::PaperLiteral,
            None => file.divided_power.unwrap_or_default(),
        },
        constants: file.constants()?,
    };
    if cfg.budget.points == 0 || cfg.budget.lines == 0 {
        return Err(CliError::Usage("budgets must be positive".into()));
    }
    if cfg.ext == 0 {
        return Err(CliError::Usage("--ext must be at least 1".into()));
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = run_config(&cli)?;
    let (report, outcome) = match cli.command {
        Command::Verify { name, p, n, expect, write_lines, write_points } => {
            let out = verify::Outputs { lines: write_lines, points: write_points };
            verify::run(&cfg, name, p, n, &expect, &out)?
        }
        Command::Analyze { surface, poly, attest, save } => {
            (commands::analyze(&cfg, surface.as_deref(), poly.as_deref(), &attest, save.as_deref())?, Ok(()))
        }
        Command::SearchFlexy { p, max_degree, support } => (commands::search(&cfg, p, max_degree, &support)?, Ok(())),
        Command::Vanish { points, degree } => (commands::vanish(&cfg, &points, degree)?, Ok(())),
        Command::Decompose { lines, points, n, k, out, require_success } => {
            if let Some(k) = k {
                cfg.constants.k = Some(parse_rational("--K", &k)?);
            }
            commands::decompose(&cfg, &lines, points.as_deref(), n, out.as_deref(), require_success)?
        }
        Command::Incidence { lines, points, plane_bound } => {
            (commands::incidence(&cfg, &lines, points.as_deref(), plane_bound)?, Ok(()))
        }
    };
    print!("{}", render::render(&report, cfg.format));
    outcome
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
