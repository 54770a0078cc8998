use std::io::Write;
use std::path::{Path, PathBuf};

use carleson::harness::CounterexampleSpec;
use carleson_cli::commands::{self, FieldKind, GenerateKind, Outcome};
use carleson_cli::config::ConfigLayer;
use carleson_cli::error::{EXIT_DOMAIN, EXIT_USAGE};
use carleson_cli::{document, CliError, CliResult, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

const LOG_ENV: &str = "CARLESON_LOG";

#[derive(Parser)]
#[command(name = "carleson-cli", version, about = "Interpolating sequences in the unit disk")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// JSON file with run settings; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true)]
    grid_resolution: Option<usize>,

    #[arg(long, global = true)]
    boundary_grid: Option<usize>,

    #[arg(long, global = true)]
    psd_tol: Option<f64>,

    #[arg(long, global = true)]
    bisect_rel_tol: Option<f64>,

    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the report here instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Blaschke sum, separation and Carleson constants
    Analyze { input: PathBuf },
    /// Split the points into two comparable Blaschke products
    Decompose {
        input: PathBuf,
        /// Excluded-disk radius; defaults to half the separation constant
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Minimal-norm bounded interpolation of the given values
    Interpolate {
        input: PathBuf,
        /// One value per point, as re or re,im
        #[arg(long = "target", required = true, allow_hyphen_values = true)]
        targets: Vec<String>,
        /// Also write the interpolant on the unit circle to this CSV
        #[arg(long)]
        boundary_csv: Option<PathBuf>,
    },
    /// Check every inequality in the zero/one interpolation argument
    Verify { input: PathBuf },
    /// Paired points with one zero/one interpolant but no uniform separation
    Counterexample {
        #[arg(long, default_value_t = 4)]
        pairs: usize,
        #[arg(long, default_value_t = 0.01)]
        gap: f64,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        /// Emit one summary row per listed gap instead of a single report
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<f64>>,
        /// Write the generated point document here
        #[arg(long)]
        points_out: Option<PathBuf>,
    },
    /// CSV of log|B| on a Cartesian grid inside the disk
    Field {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::B)]
        which: Which,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Write a point document
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[arg(long, default_value_t = 0.3)]
        min_sep: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "B")]
    B,
    #[value(name = "B0")]
    B0,
    #[value(name = "B1")]
    B1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Radial,
    Random,
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or(LOG_ENV, "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.hint() {
                eprintln!("hint: {hint}");
            }
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn resolve_config(args: &RunArgs) -> CliResult<RunConfig> {
    let file = match &args.config {
        Some(path) => ConfigLayer::from_file(path)?,
        None => ConfigLayer::default(),
    };
    let flags = ConfigLayer {
        grid_resolution: args.grid_resolution,
        boundary_grid: args.boundary_grid,
        psd_tol: args.psd_tol,
        bisect_rel_tol: args.bisect_rel_tol,
        seed: args.seed,
        output_path: args.output.clone(),
    };
    RunConfig::resolve(&[file, flags])
}

fn run(cli: Cli) -> CliResult<i32> {
    let cfg = resolve_config(&cli.run)?;
    log::debug!("{cfg:?}");
    let outcome = dispatch(cli.command, &cfg)?;
    emit(&outcome, cfg.output_path.as_deref())?;
    if outcome.exit_code == EXIT_DOMAIN {
        log::warn!("hypothesis not satisfied");
    }
    Ok(outcome.exit_code)
}

fn dispatch(command: Command, cfg: &RunConfig) -> CliResult<Outcome> {
    match command {
        Command::Analyze { input } => commands::cmd_analyze(&document::load(&input)?),
        Command::Decompose { input, delta } => commands::cmd_decompose(&document::load(&input)?, delta, cfg),
        Command::Interpolate {
            input,
            targets,
            boundary_csv,
        } => {
            let seq = document::load(&input)?;
            let targets = targets
                .iter()
                .map(|t| commands::parse_target(t))
                .collect::<CliResult<Vec<_>>>()?;
            commands::cmd_interpolate(&seq, &targets, boundary_csv.as_deref(), cfg)
        }
        Command::Verify { input } => commands::cmd_verify(&document::load(&input)?, cfg),
        Command::Counterexample {
            pairs,
            gap,
            ratio,
            sweep,
            points_out,
        } => {
            let spec = CounterexampleSpec {
                num_pairs: pairs,
                gap,
                base_radial_ratio: ratio,
            };
            match sweep {
                Some(gaps) => commands::cmd_counterexample_sweep(&spec, &gaps, cfg),
                None => commands::cmd_counterexample(&spec, points_out.as_deref(), cfg),
            }
        }
        Command::Field { input, which, delta } => {
            let kind = match which {
                Which::B => FieldKind::Full,
                Which::B0 => FieldKind::Part0,
                Which::B1 => FieldKind::Part1,
            };
            commands::cmd_field(&document::load(&input)?, kind, delta, cfg)
        }
        Command::Generate {
            kind,
            count,
            ratio,
            min_sep,
        } => {
            let kind = match kind {
                Kind::Radial => GenerateKind::Radial { ratio },
                Kind::Random => GenerateKind::Random { min_sep },
            };
            commands::cmd_generate(&kind, count, cfg)
        }
    }
}

fn emit(outcome: &Outcome, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, &outcome.text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(outcome.text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io("<stdout>", e)),
                _ => Ok(()),
            }
        }
    }
}
