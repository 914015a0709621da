use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use cellfree_af::af::Evaluator;
use cellfree_af_cli::analyze::analyze;
use cellfree_af_cli::config::{parse_angle, AntennaSetting, Preset, SpatialResolution, SweepConfig, SweepOverrides};
use cellfree_af_cli::validate::{run_validation, Level, Mutation};
use cellfree_af_cli::{run_sweep, CliError};
use clap::{Args, Parser, Subcommand};

/// Ambiguity function and MRT/MRC array gain of a circular cell-free array.
///
/// Lengths are in wavelengths.
#[derive(Parser)]
#[command(name = "cellfree-af", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized AF (dB) on a radial grid, one column per R_W, as CSV.
    Sweep(SweepArgs),
    /// Resolution, alias radius and antenna-count bound.
    Analyze(AnalyzeArgs),
    /// Cross-check the evaluators against each other.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// JSON config with the sweep fields.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Output CSV path; `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_parser = parse_evaluator)]
    evaluator: Option<Evaluator>,
    /// Antenna count or `continuous`.
    #[arg(long, value_parser = parse_antennas)]
    n: Option<AntennaSetting>,
    /// Comma-separated R_W values; `inf` is narrowband.
    #[arg(long, value_delimiter = ',', value_parser = parse_rw)]
    rw: Option<Vec<SpatialResolution>>,
    /// Displacement angle in radians, e.g. `0.25` or `3pi/37`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_theta)]
    theta_ss: Option<f64>,
    #[arg(long)]
    rmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Print the resolved JSON config to stderr.
    #[arg(long)]
    print_config: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Largest user radius to cover.
    #[arg(long = "rs-max", alias = "rmax")]
    rs_max: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, value_enum, default_value = "fast")]
    level: Level,
    #[arg(long, value_enum, default_value = "none", hide = true)]
    mutate: Mutation,
}

fn parse_evaluator(s: &str) -> Result<Evaluator, String> {
    s.parse::<Evaluator>().map_err(|e| e.to_string())
}

fn parse_antennas(s: &str) -> Result<AntennaSetting, CliError> {
    s.parse()
}

fn parse_rw(s: &str) -> Result<SpatialResolution, CliError> {
    s.parse()
}

fn parse_theta(s: &str) -> Result<f64, CliError> {
    parse_angle(s)
}

fn sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let base = match (&args.config, args.preset) {
        (Some(path), _) => SweepConfig::load(path)?,
        (None, Some(p)) => SweepConfig::preset(p),
        (None, None) => bail!("sweep needs --config <path.json> or --preset fig1|fig2"),
    };
    let overrides = SweepOverrides {
        n_antennas: args.n,
        rw_list: args.rw,
        theta_ss: args.theta_ss,
        r_max: args.rmax,
        grid_points: args.points,
        evaluator: args.evaluator,
    };
    let config = overrides.apply(base);
    if args.print_config {
        eprintln!("{}", config.to_json());
    }
    let started = Instant::now();
    let (result, warnings) = if args.out == "-" {
        run_sweep(&config, BufWriter::new(io::stdout().lock()))?
    } else {
        let file = File::create(&args.out).with_context(|| format!("creating {}", args.out))?;
        run_sweep(&config, BufWriter::new(file))?
    };
    eprintln!(
        "{} points x {} waveforms with `{}` in {:.2?}",
        result.radii.len(),
        result.waveforms.len(),
        config.evaluator,
        started.elapsed()
    );
    if warnings.truncation_tail > 0 {
        eprintln!(
            "warning: {} values hit the truncation tail (worst ratio {:.1e}); raise n_max/l_max",
            warnings.truncation_tail, warnings.worst_tail_ratio
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Sweep(args) => sweep(args),
        Command::Analyze(args) => {
            if args.n.is_none() && args.rs_max.is_none() {
                bail!("analyze needs --n and/or --rs-max");
            }
            let report = analyze(args.n, args.rs_max)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.render());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate(args) => {
            let started = Instant::now();
            let report = run_validation(args.level, args.mutate)?;
            for suite in &report.suites {
                println!("{suite}");
            }
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "overall {verdict} max_err={:.3e} in {:.2?}",
                report.max_error(),
                started.elapsed()
            );
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
