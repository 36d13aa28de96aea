//! Command line front end. Every subcommand starts from a config file and
//! layers flag overrides on top, so any run is reproducible from the file
//! plus the invocation.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use drsub::harness::{
    prepare_input, read_config, render_csv, run_checks, run_single, run_sweep, write_csv,
    Algorithm, HarnessError, RunConfig, RunOutcome,
};
use drsub::reduction::decompose_bounds;
use drsub::ProblemInstance;

#[derive(Parser)]
#[command(
    name = "drsub",
    version,
    about = "Solvers and benchmark harness for budgeted maximization on the integer lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm at one budget and print the result
    Run(RunArgs),
    /// Run every configured algorithm across all budget fractions, emitting CSV
    Sweep(CommonArgs),
    /// Sample structural inequality checks and report witnesses
    Check(CommonArgs),
    /// Exhaustive optimum on a guarded micro instance
    Exact(FractionArgs),
    /// Print the per-element item decomposition and run the greedy baseline on it
    Reduce(FractionArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a key = value run configuration
    #[arg(long)]
    config: PathBuf,
    /// Override the configured seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the configured output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the configured check sample count
    #[arg(long)]
    samples: Option<u64>,
    /// Override the configured check tolerance
    #[arg(long)]
    tolerance: Option<f64>,
    /// Lift the size guard on exhaustive search
    #[arg(long)]
    force_exact: bool,
}

#[derive(Args)]
struct FractionArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Budget as a fraction of the ground set; defaults to the first configured fraction
    #[arg(long)]
    k_fraction: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    fraction: FractionArgs,
    /// Algorithm to run; defaults to the first configured one
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Option<Algorithm>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

impl CommonArgs {
    fn load(&self) -> Result<RunConfig> {
        let mut config = read_config(&self.config)
            .with_context(|| format!("loading config {}", self.config.display()))?;
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(out) = &self.out {
            config.out = Some(out.clone());
        }
        if let Some(samples) = self.samples {
            config.samples = samples;
        }
        if let Some(tolerance) = self.tolerance {
            ensure!(
                tolerance.is_finite() && tolerance >= 0.0,
                "--tolerance must be a finite non-negative number"
            );
            config.tolerance = tolerance;
        }
        if self.force_exact {
            config.force_exact = true;
        }
        Ok(config)
    }
}

impl FractionArgs {
    fn resolve(&self) -> Result<(RunConfig, f64)> {
        let config = self.common.load()?;
        let fraction = match self.k_fraction {
            Some(f) => {
                ensure!(f.is_finite() && f > 0.0 && f <= 1.0, "--k-fraction must lie in (0, 1]");
                f
            }
            None => *config.k_fractions.first().context("config lists no budget fractions")?,
        };
        Ok((config, fraction))
    }
}

/// Die quietly on a closed pipe, like other line-oriented tools, instead of
/// panicking mid-print when output feeds `head`.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run(args) => cmd_run(args).map(|()| ExitCode::SUCCESS),
        Command::Sweep(args) => cmd_sweep(args).map(|()| ExitCode::SUCCESS),
        Command::Check(args) => cmd_check(args),
        Command::Exact(args) => cmd_exact(args).map(|()| ExitCode::SUCCESS),
        Command::Reduce(args) => cmd_reduce(args).map(|()| ExitCode::SUCCESS),
    }
}

fn print_outcome(outcome: &RunOutcome) {
    let r = &outcome.report;
    println!(
        "algorithm={} dataset={} n={} k={} alpha={} epsilon={} seed={}",
        r.algorithm, r.dataset, r.n, r.k, r.alpha, r.epsilon, r.seed
    );
    println!(
        "objective={:.8e} queries={} wall_time_ms={}",
        r.objective, r.queries, r.wall_time_ms
    );
    println!("solution={}", outcome.solution);
}

fn write_row(outcome: &RunOutcome, config: &RunConfig) -> Result<()> {
    if let Some(path) = &config.out {
        write_csv(std::slice::from_ref(&outcome.report), path)?;
        println!("wrote 1 row to {}", path.display());
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let (config, fraction) = args.fraction.resolve()?;
    let algorithm = match args.algorithm {
        Some(a) => a,
        None => *config.algorithms.first().context("config lists no algorithms")?,
    };
    let outcome = run_single(&config, algorithm, fraction)?;
    print_outcome(&outcome);
    write_row(&outcome, &config)
}

fn cmd_sweep(args: CommonArgs) -> Result<()> {
    let config = args.load()?;
    let outcomes = run_sweep(&config)?;
    let reports: Vec<_> = outcomes.into_iter().map(|o| o.report).collect();
    match &config.out {
        Some(path) => {
            write_csv(&reports, path)?;
            println!("wrote {} rows to {}", reports.len(), path.display());
        }
        None => print!("{}", render_csv(&reports)),
    }
    Ok(())
}

fn cmd_check(args: CommonArgs) -> Result<ExitCode> {
    let config = args.load()?;
    let summary = run_checks(&config)?;
    let verdict = if summary.is_clean() { "all checks clean" } else { "violations found" };
    let text = format!("{summary}{verdict}\n");
    print!("{text}");
    if let Some(path) = &config.out {
        std::fs::write(path, &text)
            .with_context(|| format!("writing summary to {}", path.display()))?;
    }
    Ok(if summary.is_clean() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_exact(args: FractionArgs) -> Result<()> {
    let (config, fraction) = args.resolve()?;
    let outcome = match run_single(&config, Algorithm::BruteForce, fraction) {
        Ok(outcome) => outcome,
        Err(HarnessError::Exact(e)) => {
            return Err(anyhow::Error::new(e)
                .context("exhaustive search refused (use --force-exact to lift the guard)"));
        }
        Err(e) => return Err(e.into()),
    };
    print_outcome(&outcome);
    write_row(&outcome, &config)
}

fn cmd_reduce(args: FractionArgs) -> Result<()> {
    let (config, fraction) = args.resolve()?;
    let prepared = prepare_input(&config)?;
    let n = prepared.ground_size();
    let k = prepared.budget_for(fraction);
    let instance = ProblemInstance::uniform(n, k)?;
    let reduced = decompose_bounds(&instance);
    println!("ground={} budget={} items={}", n, k, reduced.items().len());
    let mut per_element = vec![Vec::new(); n];
    for item in reduced.items() {
        per_element[item.element.0].push(item.weight);
    }
    if let Some((first, rest)) = per_element.split_first() {
        if rest.iter().all(|weights| weights == first) {
            println!("piece weights per element: {first:?}");
        }
    }
    let outcome = run_single(&config, Algorithm::DensityGreedy, fraction)?;
    print_outcome(&outcome);
    write_row(&outcome, &config)
}
