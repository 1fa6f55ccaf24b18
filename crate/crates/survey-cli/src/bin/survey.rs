use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use survey_cli::*;
use vinberg_engine::Height;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Two,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Md,
}

/// Reflectivity survey of even hyperbolic lattices.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// Lattice expression, e.g. "U + <-46>" or "U(11) + <-2>".
    #[arg(long, env = "SURVEY_LATTICE", conflicts_with = "series")]
    lattice: Option<String>,
    /// Range of k for U + <-2k>, e.g. 1..60.
    #[arg(long, env = "SURVEY_SERIES")]
    series: Option<String>,
    #[arg(long, env = "SURVEY_POLICY", value_enum, default_value = "all")]
    policy: PolicyArg,
    /// Center as comma-separated coordinates.
    #[arg(long, env = "SURVEY_CENTER", value_delimiter = ',', allow_hyphen_values = true)]
    center: Option<Vec<i128>>,
    /// Height cap, integer or p/q.
    #[arg(long, env = "SURVEY_MAX_HEIGHT", default_value = "1000000")]
    max_height: Height,
    #[arg(long, env = "SURVEY_MAX_ROOTS", default_value_t = 10_000)]
    max_roots: usize,
    #[arg(long, env = "SURVEY_JOBS", default_value_t = 1)]
    jobs: usize,
    #[arg(long, env = "SURVEY_FORMAT", value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long, env = "SURVEY_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Reference table to verify against; `builtin` for the embedded one.
    #[arg(long, env = "SURVEY_VERIFY")]
    verify: Option<String>,
}

fn parse_range(s: &str) -> Result<(i128, i128), String> {
    let bad = || format!("expected a range like 1..60, got {s:?}");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(args: Args) -> Result<u8, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        policy: match args.policy {
            PolicyArg::Two => Policy::Two,
            PolicyArg::All => Policy::All,
        },
        center: args.center,
        budget: run::Budgets {
            max_height: args.max_height,
            max_roots: args.max_roots,
        },
    };
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Md => Format::Markdown,
    };
    let cache = args.cache_dir.as_deref().map(Cache::new).transpose()?;
    let records = match (&args.lattice, &args.series) {
        (Some(text), _) => vec![run_one(text, &cfg, cache.as_ref())?],
        (None, Some(range)) => {
            let (a, b) = parse_range(range)?;
            run_series(a, b, &cfg, args.jobs, cache.as_ref())?
        }
        (None, None) => return Err("one of --lattice or --series is required".into()),
    };
    let undecided = records.iter().any(|r| r.kind == "undecided");
    if let Some(src) = &args.verify {
        let table = if src == "builtin" {
            ReferenceTable::embedded()
        } else {
            ReferenceTable::from_path(std::path::Path::new(src))?
        };
        let v = verify_against_reference(&records, &table);
        print!("{}", emit_verification(&v, format));
        if v.has_fail() {
            return Ok(2);
        }
    } else {
        print!("{}", emit_report(&records, format));
    }
    Ok(if undecided { 3 } else { 0 })
}
