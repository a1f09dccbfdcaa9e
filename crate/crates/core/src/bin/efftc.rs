use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use efftc::bounds::reports_to_csv;
use efftc::scenario::{
    builtin, builtin_names, run_scenario, scenario_files, table_csv, table_text, Outcome, ParamOverrides, Scenario,
    ScenarioError, TableRow,
};

/// Writes a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

/// Certified bounds on effective topological complexity of finite group actions.
#[derive(Parser)]
#[command(name = "efftc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file (or a built-in scenario by id).
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        /// Write the full outcome as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the bound reports as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run every scenario in a directory and compare with the reference values.
    Table {
        dir: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        /// Write the comparison table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List the built-in scenarios.
    ListBuiltins,
}

#[derive(Args)]
struct ParamArgs {
    /// Grid resolution R; R×R pairs are checked.
    #[arg(long)]
    grid: Option<usize>,
    /// Coverage margin ε.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Joint tolerance δ.
    #[arg(long)]
    delta: Option<f64>,
    /// Continuity modulus L.
    #[arg(long)]
    modulus: Option<f64>,
    /// Samples per path leg.
    #[arg(long)]
    samples: Option<usize>,
}

const FAILED: u8 = 1;
const USAGE: u8 = 2;

fn parse_seed(s: &str) -> Option<u64> {
    match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

impl ParamArgs {
    fn overrides(&self) -> Result<ParamOverrides, String> {
        let seed = match std::env::var("EFFTC_SEED") {
            Ok(s) => Some(parse_seed(s.trim()).ok_or_else(|| format!("EFFTC_SEED={s:?} is not an integer"))?),
            Err(_) => None,
        };
        Ok(ParamOverrides {
            grid: self.grid,
            epsilon: self.epsilon,
            delta: self.delta,
            modulus: self.modulus,
            samples: self.samples,
            seed,
        })
    }
}

fn scenario_code(e: &ScenarioError) -> u8 {
    match e {
        ScenarioError::Io(_) => FAILED,
        ScenarioError::Parse(_) | ScenarioError::Model(_) => USAGE,
    }
}

fn load(arg: &Path) -> Result<(Scenario, PathBuf), ScenarioError> {
    if !arg.exists() {
        if let Some(s) = arg.to_str().and_then(builtin) {
            return Ok((s, PathBuf::from(".")));
        }
    }
    Scenario::load(arg)
}

fn print_outcome(o: &Outcome) {
    out!("scenario {} ({})", o.scenario, o.params.label());
    for r in &o.reports {
        out!(
            "  {:<12} {:<8} lower: {}; upper: {}",
            r.invariant.to_string(),
            r.interval(),
            r.lower_source,
            r.upper_source.as_deref().unwrap_or("none")
        );
    }
    for w in &o.warnings {
        out!("  warning: {w}");
    }
    for e in &o.errors {
        out!("  error: {e}");
    }
    out!("  {}", if o.passed() { "OK" } else { "FAILED" });
}

fn write(path: &Path, text: &str) -> Result<(), u8> {
    std::fs::write(path, text).map_err(|e| {
        eprintln!("efftc: cannot write {}: {e}", path.display());
        FAILED
    })
}

fn run(scenario: &Path, params: &ParamArgs, out: Option<&Path>, csv: Option<&Path>) -> Result<(), u8> {
    let overrides = params.overrides().map_err(|e| {
        eprintln!("efftc: {e}");
        USAGE
    })?;
    let outcome = load(scenario).and_then(|(s, base)| run_scenario(&s, &base, &overrides)).map_err(|e| {
        eprintln!("efftc: {e}");
        scenario_code(&e)
    })?;
    print_outcome(&outcome);
    if !outcome.table.is_empty() {
        out!("{}", table_text(&outcome.table).trim_end());
    }
    if let Some(p) = out {
        write(p, &outcome.to_json())?;
    }
    if let Some(p) = csv {
        write(p, &reports_to_csv(&outcome.reports))?;
    }
    if outcome.passed() {
        Ok(())
    } else {
        Err(FAILED)
    }
}

fn table(dir: &Path, params: &ParamArgs, csv: Option<&Path>) -> Result<(), u8> {
    let overrides = params.overrides().map_err(|e| {
        eprintln!("efftc: {e}");
        USAGE
    })?;
    let files = scenario_files(dir).map_err(|e| {
        eprintln!("efftc: {e}");
        FAILED
    })?;
    if files.is_empty() {
        eprintln!("efftc: no scenario files in {}", dir.display());
        return Err(FAILED);
    }
    let mut rows: Vec<TableRow> = Vec::new();
    let mut failed = Vec::new();
    for f in &files {
        match Scenario::load(f).and_then(|(s, base)| run_scenario(&s, &base, &overrides)) {
            Ok(o) => {
                if !o.passed() {
                    failed.push(format!("{}: {}", o.scenario, o.errors.join("; ")));
                }
                rows.extend(o.table);
            }
            Err(e) => failed.push(e.to_string()),
        }
    }
    out!("{}", table_text(&rows).trim_end());
    let missing: Vec<&TableRow> = rows.iter().filter(|r| r.is_missing()).collect();
    for r in &missing {
        eprintln!("efftc: missing {} for {}", r.invariant, r.scenario);
    }
    for f in &failed {
        eprintln!("efftc: {f}");
    }
    if let Some(p) = csv {
        write(p, &table_csv(&rows))?;
    }
    if missing.is_empty() && failed.is_empty() {
        Ok(())
    } else {
        Err(FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run {
            scenario,
            params,
            out,
            csv,
        } => run(scenario, params, out.as_deref(), csv.as_deref()),
        Command::Table { dir, params, csv } => table(dir, params, csv.as_deref()),
        Command::ListBuiltins => {
            for (id, description) in builtin_names() {
                out!("{id:<14} {description}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
