//! Solvers and benchmark tooling for maximizing non-monotone
//! diminishing-returns objectives over the bounded integer lattice under a
//! total-budget constraint.
//!
//! The pieces, bottom up:
//!
//! - [`lattice`]: vectors over a finite ground set, the feasible region.
//! - [`oracle`]: the value-oracle trait plus counting and memo wrappers.
//! - [`checks`]: sampled structure tests (diminishing returns, lattice
//!   submodularity, two cross inequalities) with witness reporting.
//! - [`objectives`]: a revenue-maximization objective on graphs and a
//!   synthetic concave-quadratic family.
//! - [`solver`]: the two-stage approximation pipeline; a single-pass stage
//!   with a constant factor, and a threshold-descent stage that lifts it to
//!   nearly a quarter of the optimum.
//! - [`reduction`], [`exact`]: baselines for comparison on small inputs.
//! - [`harness`]: config-driven runs that emit one CSV row per
//!   (algorithm, budget) cell.
//!
//! All randomness is seeded and all evaluation orders are fixed, so equal
//! inputs reproduce equal outputs bit for bit.

pub mod checks;
pub mod exact;
pub mod harness;
pub mod lattice;
pub mod objectives;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use exact::{brute_force_opt, ExactError, ExactResult};
pub use lattice::{Element, InstanceError, LatticeVector, ProblemInstance};
pub use oracle::{marginal_gain, with_counting, CountingOracle, MemoOracle, OracleError, ValueOracle};
pub use solver::{
    balanced_alpha, fast_dr_sub, fast_dr_sub_plus, guarantee_factor, FastDrSubOutput,
    FastDrSubPlusOutput, ScoredVector, SolverError,
};
