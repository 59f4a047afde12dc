use clap::{Parser, Subcommand};
use sagin_outage::oracle::run_fixture;
use sagin_outage::{load_config, run_sweep, ConfigError, Preset, ScenarioConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "sagin-outage", version, about = "Outage probability and throughput sweeps for a satellite-aerial-ground relay network")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the configured sweep and write one CSV row per grid point.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Figure preset fig4 .. fig16; fixes the sweep variable and grid.
        #[arg(long)]
        figure: Option<String>,
        /// Monte Carlo trials per grid point.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Load and check a configuration without evaluating it.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        figure: Option<String>,
    },
    /// Compare the special functions against the bundled reference table.
    OracleCheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = limit_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(EXIT_CONFIG);
    }
    match cli.command {
        Command::Run { config, figure, trials, seed, out } => run(&config, figure.as_deref(), trials, seed, &out),
        Command::Validate { config, figure } => validate(&config, figure.as_deref()),
        Command::OracleCheck => oracle_check(),
    }
}

/// Caps the rayon pool at `SAGIN_THREADS` workers.
fn limit_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SAGIN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SAGIN_THREADS = {raw:?}: expected a positive integer"))?;
    let available = std::thread::available_parallelism().map_or(n, |a| a.get());
    rayon::ThreadPoolBuilder::new().num_threads(n.min(available)).build_global().map_err(|e| e.to_string())
}

fn load(path: &Path, figure: Option<&str>) -> Result<ScenarioConfig, ExitCode> {
    let fail = |e: ConfigError| {
        eprintln!("config error: {e}");
        ExitCode::from(EXIT_CONFIG)
    };
    let preset = match figure.map(str::parse::<Preset>).transpose() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("config error: {e}");
            return Err(ExitCode::from(EXIT_CONFIG));
        }
    };
    let cfg = load_config(path, preset).map_err(fail)?;
    for w in &cfg.warnings {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

fn run(path: &Path, figure: Option<&str>, trials: Option<u64>, seed: Option<u64>, out: &Path) -> ExitCode {
    let mut cfg = match load(path, figure) {
        Ok(c) => c,
        Err(code) => return code,
    };
    if let Some(t) = trials {
        if t == 0 {
            eprintln!("config error: --trials must be at least 1");
            return ExitCode::from(EXIT_CONFIG);
        }
        cfg.trials = t;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let result = run_sweep(&cfg);
    let written = std::fs::File::create(out)
        .map_err(csv::Error::from)
        .and_then(|f| result.write_csv(std::io::BufWriter::new(f)));
    if let Err(e) = written {
        eprintln!("error: cannot write {}: {e}", out.display());
        return ExitCode::FAILURE;
    }
    let flagged = result.rows.iter().filter(|r| !r.diagnostics.is_empty()).count();
    if flagged > 0 {
        eprintln!("{flagged} of {} rows carry diagnostics", result.rows.len());
    }
    if result.numeric_failure() {
        eprintln!("error: every method failed at one or more grid points");
        return ExitCode::from(EXIT_NUMERIC);
    }
    ExitCode::SUCCESS
}

fn validate(path: &Path, figure: Option<&str>) -> ExitCode {
    let cfg = match load(path, figure) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let grid = &cfg.sweep.grid;
    let methods: Vec<_> = cfg
        .methods
        .iter()
        .map(|m| match m {
            sagin_mc::EstimateMethod::Closed => "closed",
            sagin_mc::EstimateMethod::Integral => "integral",
            sagin_mc::EstimateMethod::MonteCarlo => "mc",
        })
        .collect();
    if let Some(p) = cfg.preset {
        println!("preset {p}: {}", p.description());
    }
    println!(
        "ok: {} over {} points [{} .. {}], methods {}, {} trials, seed {}",
        cfg.sweep.key,
        grid.len(),
        grid[0],
        grid[grid.len() - 1],
        methods.join(", "),
        cfg.trials,
        cfg.seed
    );
    ExitCode::SUCCESS
}

fn oracle_check() -> ExitCode {
    let report = match run_fixture() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: reference table: {e}");
            return ExitCode::FAILURE;
        }
    };
    for (kind, f) in &report.families {
        println!("{kind:<14} {:>4} rows  {:>3} failed  worst rel. error {:.2e}", f.rows, f.failed, f.worst_rel_error);
    }
    for o in &report.failures {
        println!("FAIL {} {:?} x={} expected {} got {:?}", o.row.kind, o.row.params, o.row.arg, o.row.expected, o.computed);
    }
    println!("{} of {} rows within tolerance", report.rows() - report.failures.len(), report.rows());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NUMERIC)
    }
}
