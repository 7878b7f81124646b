//! Command-line front end.
//!
//! Exit codes: `0` success, `1` internal failure, `2` invalid input,
//! `3` an enumeration guard refused the input, `4` the conjecture verifier
//! found a violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coalition::Coalition;
use crate::error::Error;
use crate::game::{
    fuse, in_anticore, in_core, modularity, shapley_exact, Allocation, TabularGame,
};
use crate::io::{
    allocation_json, load_allocation, load_covariance, load_mean, load_returns, round_number,
    sample_moments, write_allocation_csv, write_counterexamples_csv,
};
use crate::majorization::{verify_conjecture_diagonal, verify_conjecture_general};
use crate::tol;
use crate::variance::{
    sd_game, sd_shapley, utility_allocation, utility_game, variance_game, variance_shapley,
    CovarianceMatrix, MeanVector, UtilityParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

/// Above this many players the exact standard-deviation allocation is slow.
pub const SD_WARN_PLAYERS: usize = 18;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "COALLOC_THREADS";

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "coalloc", version, about = "Shapley allocation of portfolio variance, standard deviation and mean-variance utility")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Shapley allocation of the chosen game.
    Allocate(AllocateArgs),
    /// Classify the game and test core/anticore membership of an allocation.
    CheckCore(CheckCoreArgs),
    /// Fuse a coalition into one player and test the fusion property.
    Fuse(FuseArgs),
    /// Monte-Carlo check that normalized SD allocations are majorized by variance allocations.
    VerifyConjecture(VerifyArgs),
    /// Write the full tabular game as JSON.
    ExportGame(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Variance,
    Sd,
    Utility,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Variance => "variance",
            Method::Sd => "sd",
            Method::Utility => "utility",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Diagonal,
    General,
}

/// Where the covariance (and means) come from, and which game to build.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Headerless square covariance CSV.
    #[arg(long, conflicts_with = "returns")]
    pub cov: Option<PathBuf>,
    /// Returns CSV with a header of asset names; moments are estimated from it.
    #[arg(long)]
    pub returns: Option<PathBuf>,
    /// Single-row CSV of expected returns (with --cov, for --method utility).
    #[arg(long, conflicts_with = "returns")]
    pub mean: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Variance)]
    pub method: Method,
    /// Risk aversion of the mean-variance score; required iff --method utility.
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AllocateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GameSourceArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Tabular game JSON `{"n": .., "values": [..]}` instead of a covariance source.
    #[arg(long, conflicts_with_all = ["cov", "returns", "mean"])]
    pub game: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckCoreArgs {
    #[command(flatten)]
    pub game: GameSourceArgs,
    /// Single-row CSV allocation to test instead of the Shapley value.
    #[arg(long)]
    pub allocation: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FuseArgs {
    #[command(flatten)]
    pub game: GameSourceArgs,
    /// Comma-separated 0-based player indices to fuse.
    #[arg(long)]
    pub coalition: String,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub game: GameSourceArgs,
    /// Output file (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Diagonal)]
    pub mode: Mode,
    /// Report file (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// CSV file receiving any violating matrices
    /// (default: `<output>.violations.csv`, or `conjecture-violations.csv`).
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Guard { .. } => EXIT_GUARD,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

type CliResult<T = i32> = Result<T, CliError>;

/// Sizes the global worker pool from `COALLOC_THREADS`, if set.
pub fn configure_threads() {
    if let Some(k) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if k > 0 {
            // fails only if the pool was already built
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match &cfg.command {
        Command::Allocate(a) => cmd_allocate(a, out, err),
        Command::CheckCore(a) => cmd_check_core(a, out),
        Command::Fuse(a) => cmd_fuse(a, out),
        Command::VerifyConjecture(a) => cmd_verify_conjecture(a, out, err),
        Command::ExportGame(a) => cmd_export_game(a, out),
    }
}

/// Covariance-side inputs after validation.
struct Moments {
    names: Option<Vec<String>>,
    mean: Option<MeanVector>,
    cov: CovarianceMatrix,
    theta: Option<UtilityParams>,
}

fn validate_source(src: &SourceArgs) -> CliResult<()> {
    match (src.method, src.theta) {
        (Method::Utility, None) => return Err(CliError::input("--method utility requires --theta")),
        (Method::Variance | Method::Sd, Some(_)) => {
            return Err(CliError::input("--theta only applies to --method utility"))
        }
        (Method::Utility, Some(t)) => {
            UtilityParams::new(t)?;
        }
        _ => {}
    }
    if src.cov.is_none() && src.returns.is_none() {
        return Err(CliError::input("one of --cov or --returns is required"));
    }
    if src.method == Method::Utility && src.cov.is_some() && src.mean.is_none() {
        return Err(CliError::input("--method utility with --cov requires --mean"));
    }
    if src.method != Method::Utility && src.mean.is_some() {
        return Err(CliError::input("--mean only applies to --method utility"));
    }
    Ok(())
}

fn load_moments(src: &SourceArgs) -> CliResult<Moments> {
    validate_source(src)?;
    let theta = src.theta.map(UtilityParams::new).transpose()?;
    if let Some(path) = &src.returns {
        let returns = load_returns(path)?;
        let (mean, cov) = sample_moments(&returns)?;
        return Ok(Moments {
            names: Some(returns.names().to_vec()),
            mean: Some(mean),
            cov,
            theta,
        });
    }
    let cov = load_covariance(src.cov.as_ref().expect("validated"))?;
    let mean = src.mean.as_ref().map(load_mean).transpose()?;
    if let Some(m) = &mean {
        if m.len() != cov.n() {
            return Err(CliError::input(format!(
                "mean has {} entries but covariance is {}x{}",
                m.len(),
                cov.n(),
                cov.n()
            )));
        }
    }
    Ok(Moments {
        names: None,
        mean,
        cov,
        theta,
    })
}

fn warn_sd_cost(n: usize, err: &mut dyn Write) {
    if n > SD_WARN_PLAYERS {
        let _ = writeln!(
            err,
            "warning: exact sd allocation for {n} players enumerates 2^{n} coalitions; this may take minutes"
        );
    }
}

fn build_game(src: &GameSourceArgs, err: Option<&mut dyn Write>) -> CliResult<(TabularGame, Option<Method>, Option<Moments>)> {
    if let Some(path) = &src.game {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let game = TabularGame::from_json(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        return Ok((game, None, None));
    }
    let m = load_moments(&src.source)?;
    let game = match src.source.method {
        Method::Variance => variance_game(&m.cov)?,
        Method::Sd => {
            if let Some(err) = err {
                warn_sd_cost(m.cov.n(), err);
            }
            sd_game(&m.cov)?
        }
        Method::Utility => utility_game(
            m.mean.as_ref().expect("validated"),
            &m.cov,
            m.theta.expect("validated"),
        )?,
    };
    Ok((game, Some(src.source.method), Some(m)))
}

pub fn cmd_allocate(args: &AllocateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let m = load_moments(&args.source)?;
    let allocation = match args.source.method {
        Method::Variance => variance_shapley(&m.cov),
        Method::Utility => utility_allocation(
            m.mean.as_ref().expect("validated"),
            &m.cov,
            m.theta.expect("validated"),
        )?,
        Method::Sd => {
            warn_sd_cost(m.cov.n(), err);
            sd_shapley(&m.cov)?
        }
    };
    let names = m.names.as_deref();
    match args.format {
        Format::Csv => write_allocation_csv(out, &allocation, names)?,
        Format::Json => {
            let theta = m.theta.map(|p| p.theta());
            writeln!(out, "{}", allocation_json(args.source.method.name(), theta, &allocation, names)?)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_check_core(args: &CheckCoreArgs, out: &mut dyn Write) -> CliResult {
    let (game, method, _) = build_game(&args.game, None)?;
    let class = modularity(&game)?;
    let (allocation, source) = match &args.allocation {
        Some(path) => (load_allocation(path)?, "allocation"),
        None => {
            let phi = match (method, &args.game.source) {
                (Some(Method::Variance), src) => variance_shapley(&load_moments(src)?.cov),
                _ => shapley_exact(&game),
            };
            (phi, "Shapley")
        }
    };
    if allocation.len() != game.n() {
        return Err(CliError::input(format!(
            "allocation has {} entries, game has {} players",
            allocation.len(),
            game.n()
        )));
    }
    let core = in_core(&game, &allocation)?;
    let anticore = in_anticore(&game, &allocation)?;
    let verdict = match (class.supermodular, class.submodular) {
        (true, false) => format!("supermodular; {source} {} core", if core { "in" } else { "not in" }),
        (false, true) => format!("submodular; {source} {} anticore", if anticore { "in" } else { "not in" }),
        _ => format!("{}; {source} in core: {core}, in anticore: {anticore}", class.label()),
    };
    match args.format {
        Format::Csv => {
            writeln!(out, "classification,{}", class.label())?;
            writeln!(out, "supermodular,{}", class.supermodular)?;
            writeln!(out, "submodular,{}", class.submodular)?;
            writeln!(out, "in_core,{core}")?;
            writeln!(out, "in_anticore,{anticore}")?;
            writeln!(out, "verdict,{verdict}")?;
        }
        Format::Json => {
            let record = json!({
                "classification": class.label(),
                "supermodular": class.supermodular,
                "submodular": class.submodular,
                "allocation_source": source,
                "allocation": rounded(&allocation),
                "in_core": core,
                "in_anticore": anticore,
                "verdict": verdict,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&record).map_err(Error::from)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn rounded(a: &Allocation) -> Vec<f64> {
    a.as_slice().iter().copied().map(round_number).collect()
}

fn parse_coalition(text: &str, n: usize) -> CliResult<Coalition> {
    let players = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| CliError::input(format!("{s:?} is not a player index"))))
        .collect::<CliResult<Vec<_>>>()?;
    if players.is_empty() {
        return Err(CliError::input("--coalition names no players"));
    }
    Ok(Coalition::from_players(&players, n)?)
}

pub fn cmd_fuse(args: &FuseArgs, out: &mut dyn Write) -> CliResult {
    let (game, _, _) = build_game(&args.game, None)?;
    let merged = parse_coalition(&args.coalition, game.n())?;
    let fused = fuse(&game, merged)?;
    let fused_value = shapley_exact(&fused)[fused.n() - 1];
    let member_total = shapley_exact(&game).coalition_total(merged);
    let holds = (fused_value - member_total).abs() <= tol::EFFICIENCY * game.scale();
    let record = json!({
        "coalition": merged.players().collect::<Vec<_>>(),
        "fused_player": fused.n() - 1,
        "fused_game": fused,
        "fused_player_value": round_number(fused_value),
        "member_total": round_number(member_total),
        "fusion_property": if holds { "holds" } else { "violated" },
        "verdict": if holds { "fusion property holds" } else { "fusion property violated" },
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&record).map_err(Error::from)?)?;
    Ok(EXIT_OK)
}

pub fn cmd_export_game(args: &ExportArgs, out: &mut dyn Write) -> CliResult {
    let (game, _, _) = build_game(&args.game, None)?;
    let text = game.to_json()?;
    match &args.output {
        Some(path) => write_file(path, format!("{text}\n").as_bytes())?,
        None => writeln!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify_conjecture(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let report = match args.mode {
        Mode::Diagonal => verify_conjecture_diagonal(args.n, args.samples, args.seed)?,
        Mode::General => verify_conjecture_general(args.n, args.samples, args.seed)?,
    };
    let text = report.to_json()?;
    match &args.output {
        Some(path) => write_file(path, format!("{text}\n").as_bytes())?,
        None => writeln!(out, "{text}")?,
    }
    if report.violations == 0 {
        return Ok(EXIT_OK);
    }
    let dump = args.dump.clone().unwrap_or_else(|| match &args.output {
        Some(p) => {
            let mut s = p.clone().into_os_string();
            s.push(".violations.csv");
            PathBuf::from(s)
        }
        None => PathBuf::from("conjecture-violations.csv"),
    });
    let mut buf = Vec::new();
    write_counterexamples_csv(&mut buf, &report.counterexamples)?;
    write_file(&dump, &buf)?;
    let _ = writeln!(
        err,
        "{} violation(s); matrices written to {}",
        report.violations,
        dump.display()
    );
    Ok(EXIT_VIOLATION)
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError {
        code: EXIT_INTERNAL,
        message: format!("writing {}: {e}", path.display()),
    })
}
