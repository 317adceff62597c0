//! Command-line surface: simulation runs with trace files, disturbance-vector
//! expansion, the type-I table, and a timing harness.
//!
//! Exit codes: 0 success, 2 invalid flags or config, 3 oracle file error,
//! 4 register capacity exceeded, 1 other failures.

mod config;
mod output;

use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};

use dvgrover::{
    run_search, sample_measurements, verify_complexity, Error as CoreError, OracleSpec, RunConfig,
    TraceDetail, DEFAULT_MAX_TOTAL_QUBITS,
};

use config::ConfigFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE_FILE: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

/// Variable that overrides the total-qubit capacity cap.
pub const MAX_QUBITS_ENV: &str = "DVGROVER_MAX_QUBITS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    OracleFile(String),
    Capacity(String),
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::OracleFile(_) => EXIT_ORACLE_FILE,
            CliError::Capacity(_) => EXIT_CAPACITY,
            CliError::Other(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::OracleFile(m)
            | CliError::Capacity(m)
            | CliError::Other(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::Capacity { .. } => CliError::Capacity(err.to_string()),
            CoreError::OracleIo { .. }
            | CoreError::OracleParse { .. }
            | CoreError::DuplicateOracleEntry { .. }
            | CoreError::OracleDomain { .. }
            | CoreError::OracleRange { .. } => CliError::OracleFile(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Other(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "dvgrover",
    version,
    about = "Entangled-register search simulator for SHA-1 disturbance-vector seeding",
    after_help = "Environment:\n  DVGROVER_MAX_QUBITS  cap on control+work qubits (default 26)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and emit a per-step trace
    Simulate(SimulateArgs),
    /// Expand a 16-word seed forward (or a window backward)
    Expand(ExpandArgs),
    /// Print the type-I starting-point table as CSV
    Table,
    /// Time the gate kernels and the full pipeline
    Bench(BenchArgs),
}

#[derive(Args, Default)]
struct SimulateArgs {
    /// Qubits per register
    #[arg(long)]
    n: Option<u32>,
    /// Oracle: toy | table | file:PATH
    #[arg(long)]
    oracle: Option<String>,
    /// Entangling rounds (default floor(2^(n/2)))
    #[arg(long)]
    m: Option<u64>,
    /// Amplification rounds (default floor(2^(n/2)))
    #[arg(long)]
    t: Option<u64>,
    /// Trace output path
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Trace format: csv | json
    #[arg(long)]
    format: Option<String>,
    /// Record full per-state distributions alongside the trace
    #[arg(long, action = ArgAction::SetTrue)]
    full_dist: bool,
    /// Sample this many measurements from the final state
    #[arg(long)]
    shots: Option<u64>,
    /// Seed for measurement sampling
    #[arg(long)]
    seed: Option<u64>,
    /// Key-value config file merged under explicit flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct ExpandArgs {
    /// Sixteen hex words
    #[arg(long, num_args = 16, value_name = "WORD")]
    seed: Option<Vec<String>>,
    /// File with sixteen whitespace-separated hex words
    #[arg(long)]
    file: Option<PathBuf>,
    /// Invert the expansion: recover words before the window
    #[arg(long, action = ArgAction::SetTrue)]
    backward: bool,
    /// Backward steps (default 16)
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args, Default)]
struct BenchArgs {
    /// Qubits per register
    #[arg(long)]
    n: Option<u32>,
    /// Timing repetitions (default 5)
    #[arg(long)]
    reps: Option<u32>,
    /// Output format: table | json
    #[arg(long)]
    format: Option<String>,
    /// Key-value config file merged under explicit flags
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Parse arguments from the process environment and execute.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            err.exit();
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Expand(args) => cmd_expand(args),
        Command::Table => {
            print!("{}", dvgrover::type_i_table().to_csv());
            Ok(())
        }
        Command::Bench(args) => cmd_bench(args),
    }
}

fn max_total_qubits() -> Result<u32, CliError> {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(raw) => raw.trim().parse::<u32>().map_err(|_| {
            CliError::Usage(format!("{MAX_QUBITS_ENV} must be an unsigned integer, got {raw:?}"))
        }),
        Err(_) => Ok(DEFAULT_MAX_TOTAL_QUBITS),
    }
}

fn parse_oracle_spec(raw: &str) -> Result<OracleSpec, CliError> {
    match raw {
        "toy" => Ok(OracleSpec::Toy),
        "table" => Ok(OracleSpec::Table),
        other => match other.strip_prefix("file:") {
            Some(path) if !path.is_empty() => Ok(OracleSpec::File(PathBuf::from(path))),
            _ => Err(CliError::Usage(format!(
                "oracle must be toy, table, or file:PATH, got {other:?}"
            ))),
        },
    }
}

fn parse_format(raw: Option<&str>, choices: [&str; 2]) -> Result<String, CliError> {
    let raw = raw.unwrap_or(choices[0]);
    if choices.contains(&raw) {
        Ok(raw.to_string())
    } else {
        Err(CliError::Usage(format!(
            "format must be {} or {}, got {raw:?}",
            choices[0], choices[1]
        )))
    }
}

fn cmd_simulate(mut args: SimulateArgs) -> Result<(), CliError> {
    if let Some(path) = args.config.clone() {
        let file = ConfigFile::load(&path)?;
        file.merge_simulate(&mut args)?;
    }
    let n = args
        .n
        .ok_or_else(|| CliError::Usage("--n is required".into()))?;
    let oracle_raw = args
        .oracle
        .as_deref()
        .ok_or_else(|| CliError::Usage("--oracle is required".into()))?;
    let format = parse_format(args.format.as_deref(), ["csv", "json"])?;
    if args.full_dist {
        if args.trace.is_none() {
            return Err(CliError::Usage("--full-dist requires --trace".into()));
        }
        if 2 * n > 16 {
            return Err(CliError::Usage(
                "--full-dist is limited to 16 total qubits".into(),
            ));
        }
    }

    let mut config = RunConfig::new(n, parse_oracle_spec(oracle_raw)?);
    config.m = args.m;
    config.t = args.t;
    config.detail = if args.full_dist {
        TraceDetail::Full
    } else {
        TraceDetail::ClassTotals
    };
    config.sample_seed = args.seed.unwrap_or(0);
    config.max_total_qubits = max_total_qubits()?;

    let outcome = run_search(&config)?;

    if let Some(trace_path) = &args.trace {
        let records = output::render_trace(&outcome.trace, &format);
        output::write_atomic(trace_path, &records)?;
        if args.full_dist && format == "csv" {
            let dist_path = trace_path.with_extension("dist.csv");
            let dist = output::render_distributions_csv(&outcome.trace);
            output::write_atomic(&dist_path, &dist)?;
        }
    }

    let peak = outcome.peak();
    let peak_t = peak.step.saturating_sub(outcome.m as usize + 1);
    let last = outcome.trace.records.last().expect("trace is never empty");
    println!(
        "n = {}  m = {}  t = {}  oracle = {}",
        n, outcome.m, outcome.t, oracle_raw
    );
    println!("peak: t = {}  p_valid = {:.6}", peak_t, peak.p_valid);
    println!(
        "final: p_valid = {:.6}  p_best_valid = {:.6}  best_valid_index = {}",
        last.p_valid, last.p_best_valid, last.best_valid_index
    );
    let amplified = outcome.amplified_controls();
    if amplified.is_empty() {
        println!("amplified controls: none");
    } else {
        let list: Vec<String> = amplified.iter().map(u64::to_string).collect();
        println!("amplified controls: {}", list.join(", "));
    }
    let ledger = &outcome.ledger;
    println!(
        "ledger: phase_diagonal = {}  diffusion = {}  phase_work_zero = {}  reflection = {}  oracle = {}",
        ledger.phase_diagonal, ledger.diffusion, ledger.phase_work_zero, ledger.reflection, ledger.oracle
    );
    println!("complexity: {}", verify_complexity(ledger, n));
    if let Some(trace_path) = &args.trace {
        println!(
            "trace written to {} ({} records)",
            trace_path.display(),
            outcome.trace.records.len()
        );
    }

    if let Some(shots) = args.shots {
        let histogram = sample_measurements(&outcome.state, shots, config.sample_seed)?;
        output::print_histogram(&histogram, shots, config.sample_seed);
    }
    Ok(())
}

fn parse_hex_word(raw: &str) -> Result<u32, CliError> {
    let trimmed = raw.trim().trim_start_matches("0x");
    if trimmed.is_empty() || trimmed.len() > 8 {
        return Err(CliError::Usage(format!("malformed hex word {raw:?}")));
    }
    u32::from_str_radix(trimmed, 16)
        .map_err(|_| CliError::Usage(format!("malformed hex word {raw:?}")))
}

fn cmd_expand(args: ExpandArgs) -> Result<(), CliError> {
    let raw_words: Vec<String> = match (&args.seed, &args.file) {
        (Some(words), None) => words.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?
            .split_whitespace()
            .map(str::to_string)
            .collect(),
        _ => {
            return Err(CliError::Usage(
                "provide exactly one of --seed or --file".into(),
            ))
        }
    };
    if raw_words.len() != 16 {
        return Err(CliError::Usage(format!(
            "expected 16 words, got {}",
            raw_words.len()
        )));
    }
    let mut words = [0u32; 16];
    for (slot, raw) in words.iter_mut().zip(&raw_words) {
        *slot = parse_hex_word(raw)?;
    }
    if args.steps.is_some() && !args.backward {
        return Err(CliError::Usage("--steps requires --backward".into()));
    }

    if args.backward {
        let steps = args.steps.unwrap_or(16);
        for word in dvgrover::expand_backward(&words, steps) {
            println!("{word:08x}");
        }
    } else {
        let dv = dvgrover::DvSeed::new(words).expand();
        for word in dv.words {
            println!("{word:08x}");
        }
    }
    Ok(())
}

fn cmd_bench(mut args: BenchArgs) -> Result<(), CliError> {
    if let Some(path) = args.config.clone() {
        let file = ConfigFile::load(&path)?;
        file.merge_bench(&mut args)?;
    }
    let n = args
        .n
        .ok_or_else(|| CliError::Usage("--n is required".into()))?;
    let reps = args.reps.unwrap_or(5).max(1);
    let format = parse_format(args.format.as_deref(), ["table", "json"])?;
    let report = output::run_bench(n, reps, max_total_qubits()?)?;
    output::print_bench(&report, &format);
    Ok(())
}
