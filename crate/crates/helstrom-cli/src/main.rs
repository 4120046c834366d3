//! `helstrom` — coherent-state distinguishability from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use chrono::{SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand, ValueEnum};

use helstrom_cli::config::{self, Overrides};
use helstrom_cli::error::CliError;
use helstrom_cli::grid::{
    manifest_path, run_grid, write_grid_csv, write_grid_json, write_manifest, GridSpec,
};
use helstrom_cli::{converge, point};

#[derive(Parser)]
#[command(
    name = "helstrom",
    version,
    about = "Minimum-error discrimination of pure and mixed coherent states",
    long_about = "Computes the Helstrom probability of error for discriminating two \
coherent quantum states in a truncated Fock basis, the Shannon information an \
observer extracts at that error rate, and the information gain of pure pairs \
over phase-mirrored mixed pairs."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both state pairs at a single (x, p) displacement.
    Point(PointArgs),
    /// Sweep the information gain over a rectangular (x, p) grid.
    Grid(GridArgs),
    /// Tabulate PE against the truncation dimension at one point.
    Converge(ConvergeArgs),
}

#[derive(Args)]
struct CommonNumerics {
    /// Fixed Fock truncation dimension.
    #[arg(long, conflicts_with = "auto_dim")]
    dim: Option<usize>,
    /// Choose the truncation automatically from this tail tolerance.
    #[arg(long, value_name = "TOL")]
    auto_dim: Option<f64>,
    /// Off-diagonal Frobenius tolerance for the eigensolver.
    #[arg(long, value_name = "T")]
    eig_tol: Option<f64>,
}

#[derive(Args)]
struct PointArgs {
    /// Amplitude-quadrature displacement.
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Phase-quadrature displacement.
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[command(flatten)]
    numerics: CommonNumerics,
    /// Also print the analytic and Gram-oracle error probabilities.
    #[arg(long)]
    oracle: bool,
    /// Emit the report as JSON instead of the human layout.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GridArgs {
    /// x sweep as MIN:MAX:STEPS.
    #[arg(long, value_name = "A:B:N", allow_hyphen_values = true)]
    x_range: Option<String>,
    /// p sweep as MIN:MAX:STEPS.
    #[arg(long, value_name = "A:B:N", allow_hyphen_values = true)]
    p_range: Option<String>,
    #[command(flatten)]
    numerics: CommonNumerics,
    /// Maximum number of cells evaluated concurrently.
    #[arg(long, value_name = "K")]
    jobs: Option<usize>,
    /// Data file format.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Output data file; a `<out>.manifest.json` sidecar is always written.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    /// Ascending truncation dimensions, comma-separated (e.g. 10,20,50).
    #[arg(long, value_name = "N1,N2,...")]
    dims: String,
    /// Off-diagonal Frobenius tolerance for the eigensolver.
    #[arg(long, value_name = "T")]
    eig_tol: Option<f64>,
    /// File format used with --out.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Write the table to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("helstrom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let env = |name: &str| std::env::var(name).ok();
    let file_config = config::load_file_config(&env)?;

    match cli.command {
        Command::Point(args) => {
            let settings = config::resolve(
                &Overrides {
                    dim: args.numerics.dim,
                    auto_dim: args.numerics.auto_dim,
                    eig_tol: args.numerics.eig_tol,
                    jobs: None,
                },
                env,
                &file_config,
            )?;
            let report = point::run_point(args.x, args.p, &settings, args.oracle)?;
            if args.json {
                let text = serde_json::to_string_pretty(&report)
                    .map_err(|e| CliError::Numerical(format!("json encode: {e}")))?;
                println!("{text}");
            } else {
                print!("{}", point::render_human(&report));
            }
            Ok(())
        }
        Command::Grid(args) => {
            let settings = config::resolve(
                &Overrides {
                    dim: args.numerics.dim,
                    auto_dim: args.numerics.auto_dim,
                    eig_tol: args.numerics.eig_tol,
                    jobs: args.jobs,
                },
                env,
                &file_config,
            )?;
            let (x_min, x_max, x_steps) = parse_range(args.x_range.as_deref(), 0.0, 3.0, 61)?;
            let (p_min, p_max, p_steps) = parse_range(args.p_range.as_deref(), 0.0, 3.0, 61)?;
            let spec = GridSpec {
                x_min,
                x_max,
                p_min,
                p_max,
                x_steps,
                p_steps,
                ..GridSpec::default_surface()
            }
            .with_settings(&settings);

            let started_at = now();
            let (rows, mut manifest) = run_grid(&spec, settings.jobs)?;
            match args.format {
                OutFormat::Csv => write_grid_csv(&args.out, &rows)?,
                OutFormat::Json => write_grid_json(&args.out, &rows, &manifest)?,
            }
            manifest.started_at = Some(started_at);
            manifest.finished_at = Some(now());
            write_manifest(&manifest_path(&args.out), &manifest)?;
            eprintln!(
                "wrote {} cells at dim {} to {}",
                rows.len(),
                manifest.dim_used,
                args.out.display()
            );
            Ok(())
        }
        Command::Converge(args) => {
            let settings = config::resolve(
                &Overrides {
                    dim: None,
                    auto_dim: None,
                    eig_tol: args.eig_tol,
                    jobs: None,
                },
                env,
                &file_config,
            )?;
            let dims = parse_dims(&args.dims)?;
            let report = converge::run_converge(args.x, args.p, &dims, settings.eig_tol)?;
            match args.out {
                Some(path) => match args.format {
                    OutFormat::Csv => converge::write_csv(&path, &report)?,
                    OutFormat::Json => converge::write_json(&path, &report)?,
                },
                None => print!("{}", converge::render_human(&report)),
            }
            Ok(())
        }
    }
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Micros, true)
}

/// Parses MIN:MAX:STEPS, falling back to the given defaults when absent.
fn parse_range(
    text: Option<&str>,
    d_min: f64,
    d_max: f64,
    d_steps: usize,
) -> Result<(f64, f64, usize), CliError> {
    let Some(text) = text else {
        return Ok((d_min, d_max, d_steps));
    };
    let bad = || CliError::Usage(format!("range {text:?} must look like MIN:MAX:STEPS"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok((min, max, steps))
}

fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("--dims: invalid dimension {part:?}")))
        })
        .collect()
}
