//! Benchmark orchestration: builds an instance per (algorithm, budget)
//! cell, runs the solver behind a counting oracle, and audits the reported
//! value by re-evaluating the solution outside the count.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use super::config::{Algorithm, ObjectiveSpec, RunConfig, TimingMode};
use super::snap::{parse_snap_edge_list, SnapGraph};
use super::HarnessError;
use crate::checks::{
    check_cross_inequalities, check_dr_submodularity, check_lattice_submodularity, CrossChecks,
    PropertyReport,
};
use crate::exact::brute_force_opt;
use crate::lattice::{LatticeVector, ProblemInstance};
use crate::objectives::{build_revenue_instance, RevenueInstance, SyntheticConcaveQuadratic};
use crate::oracle::{CountingOracle, ValueOracle};
use crate::reduction::{decompose_bounds, density_greedy_reduced};
use crate::solver::{fast_dr_sub, fast_dr_sub_plus};

pub const CSV_HEADER: &str =
    "algorithm,dataset,n,k,alpha,epsilon,seed,objective,queries,wall_time_ms";

#[derive(Debug, Clone)]
pub struct AlgorithmReport {
    pub algorithm: &'static str,
    pub dataset: String,
    pub n: usize,
    pub k: u64,
    pub alpha: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub objective: f64,
    pub queries: u64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: AlgorithmReport,
    pub solution: LatticeVector,
}

/// Input resolved once per sweep; revenue datasets parse a single time no
/// matter how many cells run.
#[derive(Debug)]
pub struct PreparedInput {
    n: usize,
    dataset: String,
    graph: Option<SnapGraph>,
}

pub fn prepare_input(config: &RunConfig) -> Result<PreparedInput, HarnessError> {
    match &config.objective {
        ObjectiveSpec::Synthetic { n, .. } => {
            Ok(PreparedInput { n: *n, dataset: "synthetic".into(), graph: None })
        }
        ObjectiveSpec::Revenue { dataset, .. } => {
            let graph = parse_snap_edge_list(dataset)?;
            let name = dataset
                .file_stem()
                .map(|s| s.to_string_lossy().replace(',', "_"))
                .unwrap_or_else(|| "revenue".into());
            Ok(PreparedInput { n: graph.node_count, dataset: name, graph: Some(graph) })
        }
    }
}

impl PreparedInput {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn budget_for(&self, fraction: f64) -> u64 {
        ((fraction * self.n as f64).ceil() as u64).max(1)
    }
}

enum BuiltObjective {
    Synthetic(SyntheticConcaveQuadratic),
    Revenue(RevenueInstance),
}

impl ValueOracle for BuiltObjective {
    fn evaluate(&self, x: &LatticeVector) -> f64 {
        match self {
            BuiltObjective::Synthetic(f) => f.evaluate(x),
            BuiltObjective::Revenue(f) => f.evaluate(x),
        }
    }
}

fn build_objective(
    config: &RunConfig,
    prepared: &PreparedInput,
    instance: &ProblemInstance,
) -> Result<BuiltObjective, HarnessError> {
    match &config.objective {
        ObjectiveSpec::Synthetic { terms, .. } => Ok(BuiltObjective::Synthetic(
            SyntheticConcaveQuadratic::random(instance, *terms, config.seed),
        )),
        ObjectiveSpec::Revenue { weight_model, exponent_model, .. } => {
            let graph = prepared.graph.as_ref().expect("revenue input carries its graph");
            Ok(BuiltObjective::Revenue(build_revenue_instance(
                graph.node_count,
                &graph.edges,
                *weight_model,
                *exponent_model,
                config.seed,
            )?))
        }
    }
}

fn run_cell(
    config: &RunConfig,
    prepared: &PreparedInput,
    algorithm: Algorithm,
    fraction: f64,
) -> Result<RunOutcome, HarnessError> {
    let n = prepared.n;
    let k = prepared.budget_for(fraction);
    let instance = ProblemInstance::uniform(n, k)?;
    let objective = build_objective(config, prepared, &instance)?;
    let counting = CountingOracle::new(&objective);
    let started = Instant::now();
    let (solution, value) = match algorithm {
        Algorithm::FastDrSub => {
            let out = fast_dr_sub(&counting, &instance, config.alpha)?;
            debug_assert_eq!(out.query_count, counting.queries());
            (out.best.vector, out.best.value)
        }
        Algorithm::FastDrSubPlus => {
            let out = fast_dr_sub_plus(&counting, &instance, config.alpha, config.epsilon)?;
            debug_assert_eq!(out.query_count, counting.queries());
            (out.best.vector, out.best.value)
        }
        Algorithm::DensityGreedy => {
            let reduced = decompose_bounds(&instance);
            let solution = density_greedy_reduced(&counting, &reduced);
            let value = counting.evaluate(&solution);
            (solution, value)
        }
        Algorithm::BruteForce => {
            let out = brute_force_opt(&counting, &instance, config.force_exact)?;
            (out.argmax, out.value)
        }
    };
    let elapsed = started.elapsed();
    let queries = counting.queries();
    debug_assert!(instance.is_feasible(&solution));
    // Reported values must come from a query at exactly the reported
    // vector; an uncounted re-evaluation catches any drift bit-for-bit.
    let audit = objective.evaluate(&solution);
    if audit.to_bits() != value.to_bits() {
        return Err(HarnessError::AuditMismatch { reported: value, audit });
    }
    let wall_time_ms = match config.timing {
        TimingMode::Real => elapsed.as_millis() as u64,
        TimingMode::Zero => 0,
    };
    Ok(RunOutcome {
        report: AlgorithmReport {
            algorithm: algorithm.name(),
            dataset: prepared.dataset.clone(),
            n,
            k,
            alpha: config.alpha,
            epsilon: config.epsilon,
            seed: config.seed,
            objective: value,
            queries,
            wall_time_ms,
        },
        solution,
    })
}

pub fn run_single(
    config: &RunConfig,
    algorithm: Algorithm,
    fraction: f64,
) -> Result<RunOutcome, HarnessError> {
    let prepared = prepare_input(config)?;
    run_cell(config, &prepared, algorithm, fraction)
}

/// Every configured algorithm across every budget fraction, in config
/// order, algorithm-major.
pub fn run_sweep(config: &RunConfig) -> Result<Vec<RunOutcome>, HarnessError> {
    let prepared = prepare_input(config)?;
    let mut outcomes = Vec::with_capacity(config.algorithms.len() * config.k_fractions.len());
    for &algorithm in &config.algorithms {
        for &fraction in &config.k_fractions {
            outcomes.push(run_cell(config, &prepared, algorithm, fraction)?);
        }
    }
    Ok(outcomes)
}

/// Nine significant digits, plain exponent form. Enough to make distinct
/// doubles visibly distinct in practice while keeping rows short.
fn float_cell(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn render_csv(reports: &[AlgorithmReport]) -> String {
    let mut out = String::with_capacity(64 * (reports.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.algorithm,
            r.dataset,
            r.n,
            r.k,
            float_cell(r.alpha),
            float_cell(r.epsilon),
            r.seed,
            float_cell(r.objective),
            r.queries,
            r.wall_time_ms
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn write_csv(reports: &[AlgorithmReport], path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, render_csv(reports))
        .map_err(|source| HarnessError::Out { path: path.to_path_buf(), source })
}

/// Structure-property audit of the configured objective at the first
/// configured budget.
#[derive(Debug)]
pub struct CheckSummary {
    pub dataset: String,
    pub n: usize,
    pub k: u64,
    pub dr: PropertyReport,
    pub lattice: PropertyReport,
    pub cross: CrossChecks,
}

impl CheckSummary {
    pub fn reports(&self) -> [&PropertyReport; 4] {
        [&self.dr, &self.lattice, &self.cross.disjoint_cover, &self.cross.unit_scaling]
    }

    pub fn is_clean(&self) -> bool {
        self.reports().iter().all(|r| r.is_clean())
    }
}

impl fmt::Display for CheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dataset {} (n={}, k={})", self.dataset, self.n, self.k)?;
        for report in self.reports() {
            writeln!(f, "{report}")?;
            for violation in report.violations.iter().take(3) {
                writeln!(f, "  witness: {violation}")?;
            }
            if report.violations.len() > 3 {
                writeln!(f, "  ... {} more", report.violations.len() - 3)?;
            }
        }
        Ok(())
    }
}

pub fn run_checks(config: &RunConfig) -> Result<CheckSummary, HarnessError> {
    let prepared = prepare_input(config)?;
    let fraction = config.k_fractions.first().copied().unwrap_or(0.1);
    let k = prepared.budget_for(fraction);
    let instance = ProblemInstance::uniform(prepared.n, k)?;
    let objective = build_objective(config, &prepared, &instance)?;
    let samples = config.samples;
    let seed = config.seed;
    let tolerance = config.tolerance;
    Ok(CheckSummary {
        dataset: prepared.dataset.clone(),
        n: prepared.n,
        k,
        dr: check_dr_submodularity(&objective, &instance, samples, seed, tolerance),
        lattice: check_lattice_submodularity(&objective, &instance, samples, seed, tolerance),
        cross: check_cross_inequalities(&objective, &instance, samples, seed, tolerance),
    })
}
