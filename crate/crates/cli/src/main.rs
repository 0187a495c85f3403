use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wfcm_cli::commands::{self, ScenarioSource, SolverOptions, TableSource};
use wfcm_cli::CliError;
use wfcm_core::clustering::Scheme;

/// Fuzzy c-means clustering of distributional data with Wasserstein
/// adaptive distances.
#[derive(Debug, Parser)]
#[command(name = "wfcm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic scenario: table.json, labels.csv, sse_report.csv.
    Generate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit one clustering: result.json, memberships.csv.
    Fit {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute validity indexes for a result: internal.csv, dispersion.csv,
    /// and external.csv when --labels is given.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// result.json written by `fit`.
        #[arg(long)]
        result: PathBuf,
        /// Reference labels, `object,label` CSV.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Seed used to regenerate a --scenario table.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a range of cluster counts and tabulate internal indexes: scan.csv.
    Scan {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Inclusive range, e.g. 2..8.
        #[arg(long)]
        c_range: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ScenarioArgs {
    /// Built-in scenario preset.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    scenario: Option<u8>,
    /// Scenario spec JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

impl ScenarioArgs {
    fn source(&self) -> ScenarioSource {
        match (&self.scenario, &self.spec) {
            (Some(k), _) => ScenarioSource::Preset(usize::from(*k)),
            (None, Some(p)) => ScenarioSource::Spec(p.clone()),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Table JSON, or histogram CSV (`.csv`).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Generate the table from a built-in preset instead of reading it.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    scenario: Option<u8>,
    /// Generate the table from a scenario spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

impl InputArgs {
    fn source(&self, seed: u64) -> TableSource {
        match (&self.input, &self.scenario, &self.spec) {
            (Some(p), _, _) => TableSource::File(p.clone()),
            (None, Some(k), _) => TableSource::Scenario {
                source: ScenarioSource::Preset(usize::from(*k)),
                seed,
            },
            (None, None, Some(p)) => TableSource::Scenario {
                source: ScenarioSource::Spec(p.clone()),
                seed,
            },
            (None, None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, default_value = "fcm", value_parser = parse_scheme)]
    scheme: Scheme,
    /// Fuzzifier (> 1).
    #[arg(long, default_value_t = 1.5)]
    m: f64,
    /// Stop when the criterion changes by less than this.
    #[arg(long, default_value_t = 1e-5)]
    epsilon: f64,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    fn options(&self, clusters: usize) -> SolverOptions {
        SolverOptions {
            scheme: self.scheme,
            clusters,
            fuzzifier: self.m,
            epsilon: self.epsilon,
            max_iter: self.max_iter,
            restarts: self.restarts,
            seed: self.seed,
        }
    }
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse::<Scheme>().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate {
            scenario,
            seed,
            out,
        } => commands::generate(&scenario.source(), seed, &out),
        Command::Fit {
            input,
            solver,
            c,
            out,
        } => commands::fit(&input.source(solver.seed), &solver.options(c), &out).map(|_| ()),
        Command::Validate {
            input,
            result,
            labels,
            seed,
            out,
        } => commands::validate(&input.source(seed), &result, labels.as_deref(), &out),
        Command::Scan {
            input,
            solver,
            c_range,
            out,
        } => {
            let range = commands::parse_c_range(&c_range)?;
            commands::scan(
                &input.source(solver.seed),
                range,
                &solver.options(range.0),
                &out,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
