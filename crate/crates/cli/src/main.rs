//! `hb`: command-line front end for the hypbill library.
//!
//! Exit codes: 0 on success (possibly with warnings), 2 when the library
//! rejects the request, 3 on I/O, parse or usage errors.

mod commands;
mod config;
mod error;
mod svg;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Ctx, Format, Overrides};
use error::{CliError, EXIT_INPUT};

#[derive(Debug, Parser)]
#[command(
    name = "hb",
    version,
    about = "Billiards in hyperbolic polygons and their symbolic dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// JSON run config, polygon spec or experiment config.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled starts and words.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Property-check depth (converge), window bound (distance) or
    /// tessellation depth (render).
    #[arg(long, global = true, value_name = "N")]
    depth: Option<usize>,
    /// Enumeration budget.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a polygon and report its class, angles and area.
    Validate,
    /// Simulate a trajectory; CSV rows or the pointed code.
    Simulate(SimulateArgs),
    /// Decode a periodic code into its closed trajectory.
    Decode(WordArgs),
    /// Forbidden set, Perron eigenvalue, entropy, transitivity and mixing.
    Analyze,
    /// Dyadic Hausdorff distance between two subshifts.
    Distance,
    /// Run a convergence experiment.
    Converge,
    /// Render the polygon, an unfolding or a tessellation as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long)]
    n_future: Option<usize>,
    #[arg(long)]
    n_past: Option<usize>,
}

#[derive(Debug, Args)]
struct WordArgs {
    #[arg(long)]
    word: Option<String>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long)]
    word: Option<String>,
    #[command(flatten)]
    start: SimulateArgs,
}

impl Cli {
    fn overrides(&self) -> Overrides {
        let g = &self.global;
        let mut o = Overrides {
            format: g.format,
            seed: g.seed,
            depth: g.depth,
            budget: g.budget,
            ..Overrides::default()
        };
        let sim = match &self.command {
            Command::Simulate(s) => Some(s),
            Command::Render(r) => {
                o.word = r.word.clone();
                Some(&r.start)
            }
            Command::Decode(w) => {
                o.word = w.word.clone();
                None
            }
            _ => None,
        };
        if let Some(s) = sim {
            o.theta = s.theta;
            o.phi = s.phi;
            o.n_future = s.n_future;
            o.n_past = s.n_past;
        }
        o
    }

    /// Format used for output, and so for error reports.
    fn effective_format(&self) -> Format {
        self.global.format.unwrap_or(match self.command {
            Command::Simulate(_) | Command::Converge => Format::Csv,
            Command::Render(_) => Format::Svg,
            _ => Format::Json,
        })
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let loaded = config::load(cli.global.config.as_deref())?;
    let flags = cli.overrides();
    let ctx = Ctx {
        loaded: &loaded,
        flags: &flags,
    };
    match cli.command {
        Command::Validate => commands::validate(&ctx),
        Command::Simulate(_) => commands::simulate_cmd(&ctx),
        Command::Decode(_) => commands::decode(&ctx),
        Command::Analyze => commands::analyze_cmd(&ctx),
        Command::Distance => commands::distance(&ctx),
        Command::Converge => commands::converge(&ctx),
        Command::Render(_) => commands::render(&ctx),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HB_LOG", "warn"))
        .format_timestamp(None)
        .init();

    let result = run(&cli).and_then(|text| emit(cli.global.out.as_ref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            if cli.effective_format() == Format::Json && !matches!(e, CliError::Io { .. }) {
                if let Ok(mut report) = serde_json::to_string_pretty(&e.report()) {
                    report.push('\n');
                    let _ = emit(cli.global.out.as_ref(), &report);
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
