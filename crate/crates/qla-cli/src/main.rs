//! `qla` — command-line front end for the QLA microarchitecture models.
//!
//! Exit codes: 0 success, 1 validation or model error, 2 usage error.
//! Sweep and tabular data are emitted as CSV with units in every column
//! header; single-run reports are JSON. Every artifact embeds its run
//! manifest. All randomness derives from `--seed` (default 0), never the
//! wall clock.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

mod commands;
mod output;

use output::Emitter;

#[derive(Parser)]
#[command(name = "qla", version, about = "QLA trapped-ion microarchitecture simulator")]
struct Cli {
    /// Seed for every stochastic component.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory artifacts are written under.
    #[arg(long, global = true, default_value = "qla-artifacts")]
    out_dir: PathBuf,
    /// Built-in technology profile (`current` or `expected`).
    #[arg(long, global = true, default_value = "expected")]
    profile: String,
    /// TOML file with a custom technology profile; overrides --profile.
    /// The QLA_PROFILE_PATH environment variable is an alternative source.
    #[arg(long, global = true)]
    profile_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show technology parameters as CSV.
    Params {
        #[command(subcommand)]
        action: ParamsAction,
    },
    /// Build a tile layout and emit its JSON summary.
    Layout(LayoutArgs),
    /// Error-correction latency breakdown as CSV.
    Ecc {
        /// Recursion level (1 or 2).
        #[arg(long, default_value_t = 2)]
        level: u8,
    },
    /// Attainable computation size versus the requirement of factoring an
    /// N-bit number.
    Feasibility {
        #[arg(long)]
        bits: u64,
    },
    /// Monte Carlo logical-failure sweep over component failure rates.
    Threshold(ThresholdArgs),
    /// Connection-time table over island-spacing candidates at one distance.
    Spacing(SpacingArgs),
    /// Full connection-time family over a distance grid.
    SpacingSweep(SpacingSweepArgs),
    /// Schedule an EPR distribution workload on the island grid.
    Schedule(ScheduleArgs),
    /// Resource and runtime estimate for factoring an N-bit number.
    EstimateShor {
        #[arg(long)]
        bits: u64,
    },
    /// Regenerate the resource table, threshold sweep and spacing sweep in
    /// one pass.
    ReproduceAll(ReproduceArgs),
}

#[derive(Subcommand)]
enum ParamsAction {
    Show,
}

#[derive(Args)]
struct LayoutArgs {
    #[arg(long)]
    rows: u64,
    #[arg(long)]
    cols: u64,
    /// Island spacing along x in cells.
    #[arg(long, default_value_t = 100)]
    spacing_x: u64,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Comma-separated recursion levels.
    #[arg(long, default_value = "1,2", value_delimiter = ',')]
    levels: Vec<u8>,
    #[arg(long, default_value_t = 1e-4)]
    p_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    p_max: f64,
    #[arg(long, default_value_t = 12)]
    points: usize,
    #[arg(long, default_value_t = 20_000)]
    trials: u64,
}

#[derive(Args)]
struct SpacingArgs {
    /// Total connection distance in cells.
    #[arg(long)]
    distance: u64,
    /// Island-spacing candidates in cells.
    #[arg(long, default_value = "35,70,100,350,500,1000", value_delimiter = ',')]
    candidates: Vec<u64>,
    /// End-to-end target fidelity.
    #[arg(long, default_value_t = qla_core::interconnect::DEFAULT_TARGET_FIDELITY)]
    target_fidelity: f64,
    /// Per-cell depolarizing probability of the channel planning model.
    #[arg(long, default_value_t = 1e-3)]
    epr_cell_error: f64,
}

#[derive(Args)]
struct SpacingSweepArgs {
    #[arg(long, default_value_t = 500)]
    d_min: u64,
    #[arg(long, default_value_t = 20_000)]
    d_max: u64,
    #[arg(long, default_value_t = 500)]
    d_step: u64,
    #[arg(long, default_value = "35,70,100,350,500,1000", value_delimiter = ',')]
    candidates: Vec<u64>,
    #[arg(long, default_value_t = qla_core::interconnect::DEFAULT_TARGET_FIDELITY)]
    target_fidelity: f64,
    #[arg(long, default_value_t = 1e-3)]
    epr_cell_error: f64,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Logical grid as ROWSxCOLS, e.g. 8x8.
    #[arg(long, default_value = "8x8")]
    grid: String,
    #[arg(long, default_value_t = 2)]
    bandwidth: u32,
    /// Workload kind: `toffoli` or `file`.
    #[arg(long, default_value = "toffoli")]
    workload: String,
    /// Toffoli gate count for the generated workload.
    #[arg(long, default_value_t = 500)]
    gates: usize,
    /// Gates issued per error-correction window.
    #[arg(long, default_value_t = 10)]
    gates_per_window: usize,
    /// Island spacing in cells.
    #[arg(long, default_value_t = 100)]
    spacing: u64,
    /// Keep teleported qubits at their destination when possible.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    drift: bool,
    /// Line-oriented request file (`src_row src_col dst_row dst_col pairs
    /// release`), used when --workload file.
    #[arg(long)]
    workload_file: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Monte Carlo trials per threshold grid point.
    #[arg(long, default_value_t = 20_000)]
    trials: u64,
    /// Threshold grid points.
    #[arg(long, default_value_t = 12)]
    points: usize,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn load_profile(cli: &Cli) -> Result<qla_core::params::ParameterProfile> {
    let path = cli
        .profile_file
        .clone()
        .or_else(|| std::env::var("QLA_PROFILE_PATH").ok().map(PathBuf::from));
    if let Some(path) = path {
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading profile file {}", path.display()))?;
        return Ok(qla_core::params::parse_profile_toml(&text)?);
    }
    Ok(qla_core::params::load_profile(&cli.profile)?)
}

fn run(cli: Cli) -> Result<()> {
    let profile = load_profile(&cli)?;
    let emitter = Emitter::new(&cli.out_dir)?;
    match &cli.command {
        Command::Params { action: ParamsAction::Show } => {
            commands::params_show(&profile, cli.seed, &emitter)
        }
        Command::Layout(args) => {
            commands::layout(&profile, args.rows, args.cols, args.spacing_x, cli.seed, &emitter)
        }
        Command::Ecc { level } => commands::ecc(&profile, *level, cli.seed, &emitter),
        Command::Feasibility { bits } => commands::feasibility(&profile, *bits, cli.seed, &emitter),
        Command::Threshold(args) => {
            if args.trials == 0 {
                return Err(anyhow!("--trials must be at least 1"));
            }
            if args.points < 2 {
                return Err(anyhow!("--points must be at least 2"));
            }
            if !(args.p_min > 0.0 && args.p_max > args.p_min && args.p_max <= 1.0) {
                return Err(anyhow!(
                    "require 0 < p-min < p-max <= 1, got {} and {}",
                    args.p_min,
                    args.p_max
                ));
            }
            commands::threshold(
                &profile,
                &args.levels,
                args.p_min,
                args.p_max,
                args.points,
                args.trials,
                cli.seed,
                &emitter,
            )
        }
        Command::Spacing(args) => commands::spacing(
            &profile,
            args.distance,
            &args.candidates,
            args.target_fidelity,
            args.epr_cell_error,
            cli.seed,
            &emitter,
        ),
        Command::SpacingSweep(args) => commands::spacing_sweep(
            &profile,
            args.d_min,
            args.d_max,
            args.d_step,
            &args.candidates,
            args.target_fidelity,
            args.epr_cell_error,
            cli.seed,
            &emitter,
        ),
        Command::Schedule(args) => {
            let (rows, cols) = parse_grid(&args.grid)?;
            commands::schedule(commands::ScheduleSpec {
                profile: &profile,
                rows,
                cols,
                bandwidth: args.bandwidth,
                workload: &args.workload,
                gates: args.gates,
                gates_per_window: args.gates_per_window,
                spacing: args.spacing,
                drift: args.drift,
                workload_file: args.workload_file.as_deref(),
                seed: cli.seed,
                emitter: &emitter,
            })
        }
        Command::EstimateShor { bits } => {
            commands::estimate_shor(&profile, *bits, cli.seed, &emitter)
        }
        Command::ReproduceAll(args) => {
            commands::reproduce_all(&profile, args.trials, args.points, cli.seed, &emitter)
        }
    }
}

fn parse_grid(text: &str) -> Result<(u32, u32)> {
    let (r, c) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("grid must look like 8x8, got `{text}`"))?;
    Ok((
        r.parse().with_context(|| format!("grid rows `{r}`"))?,
        c.parse().with_context(|| format!("grid cols `{c}`"))?,
    ))
}
