//! `adelic`: batch verification runs over the model toric surfaces.
//!
//! Exit codes: 0 when every requested check passes, 1 when some identity
//! fails, 2 on configuration or parse errors.

mod commands;
mod config;
mod error;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use adelic_core::parse::parse_field;
use adelic_core::surface::SurfaceKind;
use adelic_core::FieldSpec;
use clap::{Parser, Subcommand};

use commands::Method;
use config::{Format, RunConfig, Window};
use error::CliError;
use render::Render;

#[derive(Debug, Parser)]
#[command(name = "adelic", version, about = "Adelic intersection and Riemann-Roch checks on P2 and P1xP1")]
struct Cli {
    /// p2 or p1xp1.
    #[arg(long, global = true, default_value = "p2", value_parser = surface_arg)]
    surface: SurfaceKind,
    /// fp:<p> or q.
    #[arg(long, global = true, default_value = "fp:101", value_parser = field_arg)]
    field: FieldSpec,
    /// Series precision radius, or `auto`.
    #[arg(long, global = true, default_value = "auto")]
    window: Window,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Intersection number of two divisors, e.g. `2L0 - L2` and `L1`.
    Intersect {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// Check every identity for each divisor class in a coefficient range.
    Verify {
        #[arg(long, default_value_t = 2)]
        range: i64,
    },
    /// Residue sums of seeded random two-forms.
    Reciprocity {
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

fn surface_arg(s: &str) -> Result<SurfaceKind, String> {
    SurfaceKind::from_label(s).map_err(|e| e.to_string())
}

fn field_arg(s: &str) -> Result<FieldSpec, String> {
    parse_field(s).map_err(|e| e.to_string())
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = RunConfig {
        kind: cli.surface,
        field: cli.field,
        window: cli.window,
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
    };
    let (body, ok, summary) = match cli.command {
        Command::Intersect { s, t, method } => {
            let r = commands::intersect(&cfg, &s, &t, method)?;
            let vals: Vec<String> =
                [r.pairing, r.chains, r.chains_flipped, r.oracle].iter().flatten().map(i64::to_string).collect();
            let summary = format!("{} . {} = {} ({})", r.s, r.t, vals.join(","), if r.agree { "agree" } else { "DISAGREE" });
            (r.render(cfg.format)?, r.agree, summary)
        }
        Command::Verify { range } => {
            let r = commands::verify(&cfg, range)?;
            let summary = format!("{}/{} divisor classes pass", r.passed, r.total);
            (r.render(cfg.format)?, r.passed == r.total, summary)
        }
        Command::Reciprocity { samples } => {
            let r = commands::reciprocity(&cfg, samples)?;
            let summary = format!("{}/{} forms pass", r.passed, r.total);
            (r.render(cfg.format)?, r.passed == r.total, summary)
        }
    };
    emit(&cfg, &body)?;
    if cfg.out.is_some() {
        println!("{summary}");
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
