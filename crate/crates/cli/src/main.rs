use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use schwarzian_lab_cli::args::{
    parse_angle, parse_grid, parse_range, parse_real, parse_sweep, parse_values,
};
use schwarzian_lab_cli::{
    cmd_bounds, cmd_norm, cmd_plot, cmd_sharpness, cmd_verify, PlotKind, PlotOptions, Quantity,
    RunConfig, Table, VerifyOptions,
};

const THREADS_ENV: &str = "SCHWARZIAN_LAB_THREADS";

/// Schwarzian and pre-Schwarzian norm bounds for generalized Robertson
/// functions: sweeps, sharpness checks, verification suites and plots.
///
/// Angles take an optional `deg` or `rad` suffix (radians by default).
/// Ranges are inclusive `a:b:step`.
#[derive(Parser, Debug)]
#[command(name = "schwarzian-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// alpha value(s): a number or comma list
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// beta value(s): a number or comma list
    #[arg(long, global = true)]
    beta: Option<String>,
    /// alpha range a:b:step (overrides --alpha)
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha_range: Option<String>,
    /// beta range a:b:step (overrides --beta)
    #[arg(long, global = true)]
    beta_range: Option<String>,
    /// z0 value, comma list, or a:b:step range
    #[arg(long, global = true, allow_hyphen_values = true)]
    z0: Option<String>,
    /// norm/membership grid: angles,radii,rcap,refine
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Dieudonné sweep: moduli,w-phases,omega'-phases
    #[arg(long, global = true)]
    sweep: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// write here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// seed for the randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Norm bounds over a parameter grid.
    Bounds,
    /// Weighted |S| of the extremal witness at each z0 against the norm bound.
    Sharpness {
        /// also evaluate through a truncated series of this order
        #[arg(long)]
        series_order: Option<usize>,
    },
    /// Run the verification suites; exit status 1 if any suite fails.
    Verify {
        /// random cases per randomized suite
        #[arg(long)]
        cases: Option<usize>,
        /// fault injection: add this to every Blaschke parameter b
        #[arg(long, allow_hyphen_values = true)]
        perturb_b: Option<f64>,
    },
    /// Estimate ||P_f|| and ||S_f|| for a series file.
    Norm {
        file: PathBuf,
        /// accept series without f(0) = 0, f'(0) = 1
        #[arg(long)]
        skip_normalization: bool,
    },
    /// SVG heatmap of a norm bound, or a radial profile of f_0.
    Plot {
        #[arg(long, value_enum, default_value_t = Kind::Surface)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Which::Schwarzian)]
        quantity: Which,
        /// ray angle for the radial profile
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        angle: String,
        /// points on the radial profile
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Surface,
    Radial,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Schwarzian,
    Preschwarzian,
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .with_context(|| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the worker pool")?;
    Ok(())
}

fn axis(
    list: &Option<String>,
    range: &Option<String>,
    elem: fn(&str) -> Result<f64, schwarzian_lab_cli::ConfigError>,
    default: &str,
) -> Result<Vec<f64>> {
    Ok(match (range, list) {
        (Some(r), _) => parse_range(r, elem)?,
        (None, Some(l)) => parse_values(l, elem)?,
        (None, None) => parse_values(default, elem)?,
    })
}

fn run_config(cli: &Cli, default_alpha: &str, default_beta: &str) -> Result<RunConfig> {
    Ok(RunConfig {
        alphas: axis(&cli.alpha, &cli.alpha_range, parse_angle, default_alpha)?,
        betas: axis(&cli.beta, &cli.beta_range, parse_real, default_beta)?,
        z0s: cli.z0.as_deref().map(|s| parse_values(s, parse_real)).transpose()?,
        grid: cli.grid.as_deref().map(parse_grid).transpose()?,
        sweep: cli.sweep.as_deref().map(parse_sweep).transpose()?,
        seed: cli.seed,
    })
}

fn render(table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => Ok(table.to_json()),
        Format::Svg => bail!("svg output is only available for the plot command"),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    init_threads()?;
    let format = cli.format.unwrap_or(match cli.command {
        Command::Plot { .. } => Format::Svg,
        _ => Format::Csv,
    });
    let mut code = ExitCode::SUCCESS;
    let text = match &cli.command {
        Command::Bounds => render(&cmd_bounds(&run_config(&cli, "0", "0")?)?, format)?,
        Command::Sharpness { series_order } => {
            render(&cmd_sharpness(&run_config(&cli, "0", "0")?, *series_order)?, format)?
        }
        Command::Verify { cases, perturb_b } => {
            let explicit = cli.alpha.is_some()
                || cli.beta.is_some()
                || cli.alpha_range.is_some()
                || cli.beta_range.is_some();
            let opts = VerifyOptions {
                cases: *cases,
                perturb_b: *perturb_b,
                default_params: !explicit,
            };
            let (table, passed) = cmd_verify(&run_config(&cli, "0", "0")?, &opts)?;
            if !passed {
                code = ExitCode::FAILURE;
            }
            render(&table, format)?
        }
        Command::Norm {
            file,
            skip_normalization,
        } => {
            let text = std::fs::read_to_string(file)
                .with_context(|| format!("reading {}", file.display()))?;
            let cfg = run_config(&cli, "0", "0")?;
            render(&cmd_norm(&text, cfg.grid, *skip_normalization)?, format)?
        }
        Command::Plot {
            kind,
            quantity,
            angle,
            points,
        } => {
            let kind = match kind {
                Kind::Surface => PlotKind::Surface,
                Kind::Radial => PlotKind::Radial,
            };
            let (da, db) = match kind {
                PlotKind::Surface => ("-1.5:1.5:0.06", "0:0.98:0.02"),
                PlotKind::Radial => ("0", "0.75"),
            };
            let cfg = run_config(&cli, da, db)?;
            let opts = PlotOptions {
                kind,
                quantity: match quantity {
                    Which::Schwarzian => Quantity::Schwarzian,
                    Which::Preschwarzian => Quantity::Preschwarzian,
                },
                axis_angle: parse_angle(angle)?,
                points: *points,
            };
            let out = cmd_plot(&cfg, &opts)?;
            match format {
                Format::Svg => out.svg,
                f => render(&out.table, f)?,
            }
        }
    };
    emit(&cli.out, &text)?;
    Ok(code)
}
