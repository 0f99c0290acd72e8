//! `canyon-sim`: command-line front end of the channel simulator.
//!
//! Exit codes: 0 success, 1 validation-suite failure, 2 config or input
//! error, 3 runtime generation error. Usage errors from the parser also
//! exit 2.

mod commands;
mod config;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use canyon_core::pathloss::SConvention;
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::FileConfig;

#[derive(Parser, Debug)]
#[command(
    name = "canyon-sim",
    version,
    about = "Stochastic channel simulator for street-canyon intersections",
    propagate_version = true
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// JSON configuration file; explicit flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Master seed (highest precedence, then the config file, then
    /// CANYON_SIM_SEED, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Directory for output files; most commands print to stdout without it
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for campaign generation (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Machine-readable report format; `csv` keeps data tables in CSV and
    /// summaries as text
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Print extra progress detail (repeatable)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Which form of the environment factor enters the loss formulas
    #[arg(long, global = true, value_enum)]
    s_convention: Option<SConventionArg>,

    /// Distribution table override, `state.param.coefficient=value`
    /// (repeatable)
    #[arg(long = "override", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// CSV data tables, text summaries
    Csv,
    /// JSON reports
    Json,
    /// Both forms
    Both,
}

impl Format {
    fn wants_text(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    fn wants_json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SConventionArg {
    /// The composite factor as-is
    Raw,
    /// The normalized composite factor
    Normalized,
}

impl From<SConventionArg> for SConvention {
    fn from(value: SConventionArg) -> Self {
        match value {
            SConventionArg::Raw => SConvention::Raw,
            SConventionArg::Normalized => SConvention::Normalized,
        }
    }
}

/// Where the environment comes from; exactly one source must be given.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct EnvSource {
    /// Survey file with building heights, footprints, and region area (JSON)
    #[arg(long, value_name = "FILE")]
    region: Option<PathBuf>,

    /// Composite environment factor, given directly
    #[arg(long, value_name = "VALUE")]
    s: Option<f64>,

    /// Scenario preset: hcl, mcl, or lcl
    #[arg(long, value_name = "NAME")]
    scenario: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a survey to its composite environment factor
    Envfactor(EnvFactorArgs),
    /// Tabulate path loss and its baseline over a distance sweep
    Pathloss(PathLossArgs),
    /// Generate channel realizations as drop files plus a component table
    Generate(GenerateArgs),
    /// Run a multi-drop campaign and summarize or export its metrics
    Campaign(CampaignArgs),
    /// Run the built-in self-checks
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct EnvFactorArgs {
    #[command(flatten)]
    env: EnvSource,
}

#[derive(Args, Debug)]
struct PathLossArgs {
    #[command(flatten)]
    env: EnvSource,

    /// Evaluate at a single distance instead of sweeping
    #[arg(long, value_name = "METRES", conflicts_with_all = ["d_min", "d_max", "points"])]
    distance: Option<f64>,

    /// Sweep start, metres
    #[arg(long, value_name = "METRES")]
    d_min: Option<f64>,

    /// Sweep end, metres
    #[arg(long, value_name = "METRES")]
    d_max: Option<f64>,

    /// Sweep points, log-spaced
    #[arg(long)]
    points: Option<usize>,

    #[command(flatten)]
    link: LinkBudgetArgs,
}

/// Link-budget knobs shared by the loss-evaluating commands.
#[derive(Args, Debug)]
struct LinkBudgetArgs {
    /// Carrier frequency, GHz
    #[arg(long, value_name = "GHZ")]
    fc_ghz: Option<f64>,

    /// Receive antenna height, metres
    #[arg(long, value_name = "METRES")]
    rx_height_m: Option<f64>,

    /// Corner distance of the obstructed model, metres
    #[arg(long, value_name = "METRES")]
    breakpoint_m: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StateArg {
    Los,
    Nlos,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    env: EnvSource,

    /// Propagation condition of the generated links
    #[arg(long, value_enum, default_value_t = StateArg::Nlos)]
    state: StateArg,

    /// Link distance, metres
    #[arg(long, value_name = "METRES", default_value_t = 100.0)]
    distance: f64,

    /// Number of realizations
    #[arg(short = 'n', long = "drops", default_value_t = 1)]
    n_drops: usize,

    #[command(flatten)]
    link: LinkBudgetArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScheduleArg {
    /// Line of sight below the corner distance, obstructed from it on
    Breakpoint,
    /// Line of sight everywhere
    Los,
    /// Obstructed everywhere
    Nlos,
}

#[derive(Args, Debug)]
struct CampaignArgs {
    #[command(flatten)]
    env: EnvSource,

    /// Number of drops
    #[arg(short = 'n', long = "drops")]
    n_drops: Option<usize>,

    /// Distance grid start, metres
    #[arg(long, value_name = "METRES")]
    d_min: Option<f64>,

    /// Distance grid end, metres
    #[arg(long, value_name = "METRES")]
    d_max: Option<f64>,

    /// Distance grid points, log-spaced
    #[arg(long)]
    grid_points: Option<usize>,

    /// How link states are assigned across the grid
    #[arg(long, value_enum, default_value_t = ScheduleArg::Breakpoint)]
    schedule: ScheduleArg,

    /// Frequency points of the narrowband loss average
    #[arg(long)]
    ctf_points: Option<usize>,

    /// Frequency span of the narrowband loss average, Hz
    #[arg(long, value_name = "HZ")]
    ctf_span_hz: Option<f64>,

    /// Delay bin width for the delay spread, nanoseconds
    #[arg(long, value_name = "NS")]
    delay_bin_ns: Option<f64>,

    /// Also export every realization (needs --out)
    #[arg(long)]
    write_drops: bool,

    #[command(flatten)]
    link: LinkBudgetArgs,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Only run checks whose `suite/name` contains this string
    #[arg(long, value_name = "FILTER")]
    only: Option<String>,
}

/// Global options after merging flags, file, and environment.
struct Resolved {
    file: FileConfig,
    format: Format,
    out: Option<PathBuf>,
    seed: u64,
    verbose: u8,
    s_convention: Option<SConvention>,
    overrides: BTreeMap<String, f64>,
}

/// A failed run, split by which exit code it must map to.
enum Failure {
    /// Bad configuration or input: exit 2.
    Input(anyhow::Error),
    /// The simulation or its output failed: exit 3, except that errors
    /// shaped like configuration problems still exit 2.
    Runtime(anyhow::Error),
}

impl Failure {
    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Input(e) | Failure::Runtime(e) => e,
        }
    }

    fn exit_code(&self) -> u8 {
        use canyon_core::Error as CoreError;
        match self {
            Failure::Input(_) => 2,
            Failure::Runtime(e) => match e.downcast_ref::<CoreError>() {
                Some(
                    CoreError::DropGeneration { .. }
                    | CoreError::RejectionExhausted { .. }
                    | CoreError::Io { .. }
                    | CoreError::Json { .. },
                ) => 3,
                Some(_) => 2,
                None => 3,
            },
        }
    }
}

type CommandResult = Result<ExitCode, Failure>;

fn resolve(global: &GlobalArgs) -> anyhow::Result<Resolved> {
    let file = match &global.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let seed = resolve_seed(global.seed, file.seed)?;
    let mut overrides = file.table_overrides.clone().unwrap_or_default();
    for pair in &global.overrides {
        let (key, value) = pair
            .split_once('=')
            .with_context(|| format!("override {pair:?} is not of the form key=value"))?;
        let value: f64 = value
            .trim()
            .parse()
            .with_context(|| format!("override {pair:?} has a non-numeric value"))?;
        overrides.insert(key.trim().to_string(), value);
    }
    Ok(Resolved {
        s_convention: global.s_convention.map(SConvention::from).or(file.s_convention),
        format: global.format,
        out: global.out.clone(),
        seed,
        verbose: global.verbose,
        overrides,
        file,
    })
}

fn resolve_seed(flag: Option<u64>, file: Option<u64>) -> anyhow::Result<u64> {
    if let Some(seed) = flag.or(file) {
        return Ok(seed);
    }
    match std::env::var("CANYON_SIM_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .with_context(|| format!("CANYON_SIM_SEED is not a valid seed: {text:?}")),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> CommandResult {
    if cli.global.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.workers)
            .build_global()
            .context("configuring the worker pool")
            .map_err(Failure::Input)?;
    }
    let resolved = resolve(&cli.global).map_err(Failure::Input)?;
    match &cli.command {
        Command::Envfactor(args) => commands::envfactor::run(&resolved, args),
        Command::Pathloss(args) => commands::pathloss::run(&resolved, args),
        Command::Generate(args) => commands::generate::run(&resolved, args),
        Command::Campaign(args) => commands::campaign::run(&resolved, args),
        Command::Validate(args) => commands::validate::run(&resolved, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            ExitCode::from(failure.exit_code())
        }
    }
}
