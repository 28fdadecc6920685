use std::fs::File;
use std::io::{self, BufReader, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ghgd_cli::job::Mode;
use ghgd_cli::output::render;
use ghgd_cli::run::report_exit_code;
use ghgd_cli::{exit, parse_batch, run, CliError, Command, Format, JobSpec, BUDGET_ENV};
use ghgd_core::oracle::DEFAULT_BUDGET;
use rayon::prelude::*;

/// Exact statistics for overlaps among subsets drawn from a finite population.
#[derive(Debug, Parser)]
#[command(name = "ghgd", version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Newline-delimited JSON job records; `-` reads standard input.
    #[arg(long, value_name = "FILE")]
    batch: Option<String>,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Mean, variance and moments.
    Stats(JobArgs),
    /// Probability mass function.
    Pmf(JobArgs),
    /// Chebyshev bounds on P(x >= 1) and mean thresholds for a significance level.
    Bound(JobArgs),
    /// Tail probability of an observed overlap count.
    Significance(JobArgs),
    /// Probability mass function by exhaustive enumeration.
    Oracle(JobArgs),
    /// Monte Carlo summary.
    Simulate(JobArgs),
    /// Closed forms against exhaustive enumeration.
    Crosscheck(JobArgs),
}

#[derive(Debug, Args)]
struct JobArgs {
    /// Population size.
    #[arg(long)]
    n: u64,
    /// Subset sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<u64>,
    /// Overlap level (defaults to the number of subsets).
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Highest moment order.
    #[arg(long)]
    v: Option<u32>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Significance level.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long = "observed-k")]
    observed_k: Option<u64>,
    /// Maximum number of configurations to enumerate.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Cmd {
    fn into_job(self) -> JobSpec {
        let (command, a) = match self {
            Cmd::Stats(a) => (Command::Stats, a),
            Cmd::Pmf(a) => (Command::Pmf, a),
            Cmd::Bound(a) => (Command::Bound, a),
            Cmd::Significance(a) => (Command::Significance, a),
            Cmd::Oracle(a) => (Command::Oracle, a),
            Cmd::Simulate(a) => (Command::Simulate, a),
            Cmd::Crosscheck(a) => (Command::Crosscheck, a),
        };
        JobSpec {
            command,
            n: a.n,
            m: a.m,
            t: a.t,
            mode: a.mode,
            v: a.v,
            trials: a.trials,
            seed: a.seed,
            alpha: a.alpha,
            observed_k: a.observed_k,
            budget: a.budget,
            format: a.format,
        }
    }
}

fn default_budget() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={v} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read_batch(path: &str, budget: u64) -> Result<Vec<JobSpec>, CliError> {
    if path == "-" {
        parse_batch(io::stdin().lock(), budget)
    } else {
        let file = File::open(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        parse_batch(BufReader::new(file), budget)
    }
}

/// Runs one job and renders its output; errors become an error record.
fn execute(job: &JobSpec, budget: u64) -> (String, String, u8) {
    match run(job, budget) {
        Ok((report, valid)) => match render(&report, valid.format) {
            Ok(text) => (text, String::new(), report_exit_code(&report)),
            Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
        },
        Err(e) => {
            let code = e.exit_code();
            let stdout = match job.format.unwrap_or_default() {
                Format::Json => format!("{}\n", serde_json::json!({ "error": e.to_string(), "exit_code": code })),
                _ => String::new(),
            };
            (stdout, format!("error: {e}\n"), code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::SUCCESS });
        }
    };
    let budget = match default_budget() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let jobs = match (cli.batch, cli.command) {
        (Some(path), None) => match read_batch(&path, budget) {
            Ok(jobs) => jobs,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
        },
        (None, Some(cmd)) => vec![cmd.into_job()],
        _ => {
            eprintln!("error: give a command or --batch FILE; see --help");
            return ExitCode::from(exit::USAGE);
        }
    };

    let results: Vec<(String, String, u8)> = jobs.par_iter().map(|job| execute(job, budget)).collect();
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    let mut code = exit::SUCCESS;
    for (out, err, c) in results {
        let _ = stdout.write_all(out.as_bytes());
        let _ = stderr.write_all(err.as_bytes());
        code = code.max(c);
    }
    let _ = stdout.flush();
    ExitCode::from(code)
}
