//! Command-line front end.
//!
//! Exit codes: 0 verified, 1 mismatch found, 2 usage error, 3 resource cap.

mod commands;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::landscape::{LandscapeError, Limits, DEFAULT_KEEP_CYCLES_CAP, DEFAULT_STATE_CAP};
use crate::polynomial::{cyclotomic, recurrence_from, Polynomial, Recurrence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Longest sweep a range argument may expand to.
const MAX_RANGE_LEN: usize = 1 << 20;

#[derive(Debug, Parser)]
#[command(name = "period-landscape", version, about = "Periodic orbits of integer recurrences modulo m")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest state space m^k that will be enumerated.
    #[arg(long, global = true)]
    state_cap: Option<u64>,
    /// Explicit cycles are kept only up to this many states.
    #[arg(long, global = true)]
    keep_cycles_cap: Option<u64>,
    /// Seed for all random sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for independent instances.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// TOML file with the same fields as the flags; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate every cycle of a recurrence modulo m.
    Landscape {
        /// `fib`, `parity`, `phi:N`, `pow:N`, or monic coefficients highest degree first (`1,-1,-1`).
        poly: PolySpec,
        /// Modulus or range such as `1..6`.
        m: Moduli,
        /// Also render cycles as digit strings (m <= 10).
        #[arg(long)]
        digits: bool,
    },
    /// Closed-form spectrum prediction for a family.
    Predict {
        family: PredictFamily,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long)]
        m: Moduli,
    },
    /// Sweep predictions or structural claims against brute force.
    Verify {
        family: VerifyFamily,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long)]
        m: Option<Moduli>,
        /// Sweep all primes up to this bound.
        #[arg(long)]
        p_max: Option<u64>,
        /// Highest exponent for self-similarity.
        #[arg(long, default_value_t = 2)]
        k_max: u32,
        /// Recurrence for `weights` and `chiral`.
        #[arg(long, default_value = "fib")]
        poly: PolySpec,
    },
    /// Fibonacci landscape class of primes.
    Classify {
        #[arg(long, conflicts_with = "p_max")]
        p: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
    },
    /// Weight conservation between modulus m and its divisors.
    Weights {
        #[arg(long)]
        m: Moduli,
        /// Single divisor; all divisors when omitted.
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value = "fib")]
        poly: PolySpec,
    },
    /// Compare a recurrence with its parity transform.
    Chiral {
        #[arg(default_value = "fib")]
        poly: PolySpec,
        #[arg(long)]
        m: Moduli,
    },
    /// Position distribution of the absolute minimum.
    Minima {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = MinimaMode::Angle)]
        mode: MinimaMode,
        /// Half-width N of the integer box [-N, N]^2.
        #[arg(long, default_value_t = 1_000_000)]
        box_size: i64,
        #[arg(long, value_enum, default_value_t = MinimaRecurrence::Fibonacci)]
        recurrence: MinimaRecurrence,
        /// Index range such as `-6..7`.
        #[arg(long, default_value = "-6..7", allow_hyphen_values = true)]
        range: Indices,
        #[arg(long)]
        analytic_only: bool,
    },
    /// Pisano periods.
    Pisano {
        m: Moduli,
    },
}

#[derive(Debug, Clone, Args)]
struct FamilyParams {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum PredictFamily {
    PhiP,
    #[value(name = "phi_2p")]
    Phi2p,
    PhiPj,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum VerifyFamily {
    PhiP,
    #[value(name = "phi_2p")]
    Phi2p,
    PhiPj,
    Pow,
    FibPrime,
    SelfSimilarity,
    Weights,
    Chiral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MinimaMode {
    Angle,
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MinimaRecurrence {
    Fibonacci,
    Parity,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// A recurrence named on the command line.
#[derive(Debug, Clone)]
pub struct PolySpec {
    pub label: String,
    pub recurrence: Recurrence,
}

impl std::str::FromStr for PolySpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_poly_spec(s)
    }
}

/// Parses `fib`, `parity`, `phi:N`, `pow:N`, or a comma-separated list of
/// monic polynomial coefficients from the highest degree down.
pub fn parse_poly_spec(s: &str) -> Result<PolySpec, String> {
    let s = s.trim();
    let index = |rest: &str| -> Result<u64, String> {
        rest.parse::<u64>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| format!("expected a positive index, got `{rest}`"))
    };
    let poly = match s {
        "fib" => return Ok(PolySpec { label: "fib".into(), recurrence: Recurrence::fibonacci() }),
        "parity" => return Ok(PolySpec { label: "parity".into(), recurrence: Recurrence::parity() }),
        _ if s.starts_with("phi:") => cyclotomic(index(&s[4..])?).map_err(|e| e.to_string())?,
        _ if s.starts_with("pow:") => Polynomial::x_pow_minus_one(index(&s[4..])? as usize),
        _ => {
            let mut coeffs = s
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| format!("bad coefficient `{c}` in `{s}`")))
                .collect::<Result<Vec<_>, _>>()?;
            coeffs.reverse();
            Polynomial::new(coeffs)
        }
    };
    let recurrence = recurrence_from(&poly).map_err(|e| format!("`{s}`: {e}"))?;
    Ok(PolySpec { label: s.to_string(), recurrence })
}

/// Parses `a`, `a..b` (inclusive), or comma-separated combinations.
pub fn parse_range(s: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range `{s}`"));
        let (lo, hi) = match part.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(part)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{part}`"));
        }
        if (hi - lo) as usize >= MAX_RANGE_LEN || out.len() + ((hi - lo) as usize) >= MAX_RANGE_LEN {
            return Err(format!("range `{s}` is too long"));
        }
        out.extend(lo..=hi);
    }
    Ok(out)
}

/// Moduli from a range argument; all must be positive.
#[derive(Debug, Clone)]
pub struct Moduli(pub Vec<u64>);

impl std::str::FromStr for Moduli {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_range(s)?
            .into_iter()
            .map(|v| u64::try_from(v).ok().filter(|&m| m >= 1).ok_or_else(|| format!("moduli must be positive: `{s}`")))
            .collect::<Result<_, _>>()
            .map(Moduli)
    }
}

#[derive(Debug, Clone)]
pub struct Indices(pub Vec<i64>);

impl std::str::FromStr for Indices {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_range(s).map(Indices)
    }
}

/// Effective settings after merging the config file and flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub state_cap: u64,
    pub keep_cycles_cap: u64,
    pub rng_seed: u64,
    pub output_format: OutputFormat,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            state_cap: DEFAULT_STATE_CAP,
            keep_cycles_cap: DEFAULT_KEEP_CYCLES_CAP,
            rng_seed: 0,
            output_format: OutputFormat::Json,
            output_path: None,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            state_cap: self.state_cap,
            keep_cycles_cap: self.keep_cycles_cap,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    state_cap: Option<u64>,
    keep_cycles_cap: Option<u64>,
    rng_seed: Option<u64>,
    output_format: Option<OutputFormat>,
    output_path: Option<PathBuf>,
    jobs: Option<usize>,
}

fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

fn resolve_config(global: &GlobalArgs) -> Result<RunConfig, CliError> {
    let file = match &global.config {
        Some(path) => load_config(path)?,
        None => ConfigFile::default(),
    };
    let d = RunConfig::default();
    let cfg = RunConfig {
        state_cap: global.state_cap.or(file.state_cap).unwrap_or(d.state_cap),
        keep_cycles_cap: global.keep_cycles_cap.or(file.keep_cycles_cap).unwrap_or(d.keep_cycles_cap),
        rng_seed: global.seed.or(file.rng_seed).unwrap_or(d.rng_seed),
        output_format: global.format.or(file.output_format).unwrap_or(d.output_format),
        output_path: global.output.clone().or(file.output_path),
        jobs: global.jobs.or(file.jobs),
    };
    if cfg.state_cap == 0 || cfg.keep_cycles_cap == 0 {
        return Err(CliError::Usage("caps must be positive".into()));
    }
    if cfg.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    Ok(cfg)
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Cap(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<LandscapeError> for CliError {
    fn from(e: LandscapeError) -> Self {
        match e {
            LandscapeError::CapExceeded { .. } | LandscapeError::OrderCapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Overall verdict of a command; the worst instance wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Status {
    Ok,
    Cap,
    Mismatch,
}

impl Status {
    fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Mismatch => EXIT_MISMATCH,
            Status::Cap => EXIT_CAP,
        }
    }
}

/// Rendered output of one command in every format.
pub(crate) struct Report {
    command: &'static str,
    results: Vec<serde_json::Value>,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: String,
    status: Status,
}

/// A result that knows its CSV rows and text line.
pub(crate) trait Record: Serialize {
    fn csv_rows(&self) -> Vec<Vec<String>>;
    fn text(&self) -> String;
}

impl Report {
    fn new<R: Record>(command: &'static str, header: &[&'static str], records: &[R], status: Status) -> Self {
        Report {
            command,
            results: records
                .iter()
                .map(|r| serde_json::to_value(r).expect("records serialize"))
                .collect(),
            header: header.to_vec(),
            rows: records.iter().flat_map(Record::csv_rows).collect(),
            text: records.iter().map(|r| r.text() + "\n").collect(),
            status,
        }
    }

    fn render(&self, cfg: &RunConfig) -> Vec<u8> {
        match cfg.output_format {
            OutputFormat::Json => {
                let doc = serde_json::json!({
                    "command": self.command,
                    "config": cfg,
                    "results": self.results,
                });
                let mut out = serde_json::to_vec_pretty(&doc).expect("json");
                out.push(b'\n');
                out
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("csv");
                for row in &self.rows {
                    w.write_record(row).expect("csv");
                }
                w.into_inner().expect("csv")
            }
            OutputFormat::Text => self.text.clone().into_bytes(),
        }
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    use commands::*;
    match command {
        Command::Landscape { poly, m, digits } => landscape(poly, &m.0, *digits, cfg),
        Command::Predict { family, params, m } => predict(*family, params, &m.0),
        Command::Verify { family, params, m, p_max, k_max, poly } => {
            verify(*family, params, m.as_ref().map(|m| m.0.as_slice()), *p_max, *k_max, poly, cfg)
        }
        Command::Classify { p, p_max } => classify(*p, *p_max, cfg),
        Command::Weights { m, d, poly } => weights(&m.0, *d, poly, cfg),
        Command::Chiral { poly, m } => chiral(poly, &m.0, cfg),
        Command::Minima { samples, mode, box_size, recurrence, range, analytic_only } => {
            minima(*samples, *mode, *box_size, *recurrence, &range.0, *analytic_only, cfg)
        }
        Command::Pisano { m } => pisano(&m.0, cfg),
    }
}

/// Runs the CLI with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = resolve_config(&cli.global).and_then(|cfg| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        let report = pool.install(|| dispatch(&cli.command, &cfg))?;
        Ok((cfg, report))
    });
    let (cfg, report) = match outcome {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let bytes = report.render(&cfg);
    let written = match &cfg.output_path {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    report.status.exit_code()
}
