//! `folium`: JSON front end to the foliation, involution and rational-map
//! computations of `folium-core`.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use folium_core::rational::Point;
use folium_core::Complex64;

use config::{RunConfig, SEED_ENV};
use report::{ErrorReport, Report, SCHEMA};

const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "folium",
    version,
    about = "Foliation germs, tangency involutions and rational first integrals"
)]
struct Cli {
    /// Config file of `key = value` lines (order, coef_tol, root_tol,
    /// matching_tol, real_tol, seed, budget).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for randomized searches; FOLIUM_SEED takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Truncation order of computed series.
    #[arg(long, global = true)]
    order: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Blow up a 1-form in the (x, y) frame.
    Blowup {
        #[arg(long)]
        form: PathBuf,
    },
    /// Test a 1-form for the T₁ jet conditions and report β.
    T1 {
        #[arg(long)]
        form: PathBuf,
    },
    /// Tangency involution of a T₁ germ.
    Involution {
        #[arg(long)]
        form: PathBuf,
    },
    /// Check membership of a series in Inv_k.
    CheckInv {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Search for a Moebius map conjugating two involutions.
    Orbit {
        #[arg(long)]
        inv1: PathBuf,
        #[arg(long)]
        inv2: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Conjugation path h_u⁻¹∘f∘h_u, h_u = t + u t^m.
    Gtpath {
        #[arg(long)]
        inv: PathBuf,
        #[arg(long)]
        m: usize,
        /// `re` or `re,im`.
        #[arg(long, value_parser = commands::parse_complex, allow_hyphen_values = true)]
        u: Option<Complex64>,
    },
    /// The two norms of a series, and distances to a second one.
    Norms {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Critical points, orders and values of a rational map.
    Critical {
        #[arg(long)]
        map: PathBuf,
    },
    /// Monodromy generators of a rational map.
    Monodromy {
        #[arg(long)]
        map: PathBuf,
        /// Critical value (`re`, `re,im` or `inf`) whose generator to report.
        #[arg(long, value_parser = commands::parse_point, allow_hyphen_values = true)]
        around: Option<Point>,
    },
    /// Classify the critical curves of a family R(x, t).
    Classify {
        #[arg(long)]
        family: PathBuf,
    },
    /// Search for, or verify, a real quintic certificate.
    Quintic {
        #[arg(long)]
        budget: Option<usize>,
        /// Comma-separated a₀..a₅ to verify instead of searching.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Blowup { .. } => "blowup",
            Command::T1 { .. } => "t1",
            Command::Involution { .. } => "involution",
            Command::CheckInv { .. } => "check-inv",
            Command::Orbit { .. } => "orbit",
            Command::Gtpath { .. } => "gtpath",
            Command::Norms { .. } => "norms",
            Command::Critical { .. } => "critical",
            Command::Monodromy { .. } => "monodromy",
            Command::Classify { .. } => "classify",
            Command::Quintic { .. } => "quintic",
        }
    }
}

fn run(cfg: &RunConfig, command: &Command) -> anyhow::Result<serde_json::Value> {
    match command {
        Command::Blowup { form } => commands::blowup(form),
        Command::T1 { form } => commands::t1(cfg, form),
        Command::Involution { form } => commands::involution(cfg, form),
        Command::CheckInv { series, k } => commands::check_inv(cfg, series, *k),
        Command::Orbit { inv1, inv2, k } => commands::orbit(cfg, inv1, inv2, *k),
        Command::Gtpath { inv, m, u } => commands::gtpath(cfg, inv, *m, *u),
        Command::Norms { series, other } => commands::norms(series, other.as_deref()),
        Command::Critical { map } => commands::critical(cfg, map),
        Command::Monodromy { map, around } => commands::monodromy(cfg, map, *around),
        Command::Classify { family } => commands::classify(cfg, family),
        Command::Quintic { coeffs, .. } => commands::quintic(cfg, coeffs.as_deref()),
    }
}

fn build_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(n) = cli.order {
        cfg.order = n;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Command::Quintic {
        budget: Some(b), ..
    } = &cli.command
    {
        cfg.budget = *b;
    }
    cfg.apply_env_seed(std::env::var(SEED_ENV).ok())?;
    cfg.validate()?;
    Ok(cfg)
}

fn emit(report: &Report<'_>) {
    match report::to_string(report) {
        Ok(s) => {
            // a closed pipe downstream is not an error of ours
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{s}").and_then(|()| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("folium: cannot write report: {e}");
                }
            }
        }
        Err(e) => eprintln!("folium: cannot serialize report: {e}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let name = cli.command.name();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("folium: {e:#}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg, &cli.command) {
        Ok(result) => {
            emit(&Report {
                schema: SCHEMA,
                command: name,
                config: &cfg,
                result: Some(result),
                error: None,
            });
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = commands::exit_code(&e);
            eprintln!("folium {name}: {e:#}");
            emit(&Report {
                schema: SCHEMA,
                command: name,
                config: &cfg,
                result: None,
                error: Some(ErrorReport {
                    kind: commands::error_kind(&e),
                    message: format!("{e:#}"),
                }),
            });
            ExitCode::from(code)
        }
    }
}
