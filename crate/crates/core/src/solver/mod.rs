//! Deterministic greedy solvers for `max f(x)` subject to
//! `norm1(x) <= k`, `x <= B`, where `f` is a non-negative
//! diminishing-returns objective given by a value oracle.
//!
//! Two stages share the same binary-search step primitive: a single-pass
//! solver whose guarantee degrades gracefully, and a threshold-descent
//! refinement that lifts the ratio to `1/4 - epsilon` at the cost of more
//! queries. Inputs that are not DR-submodular void the binary searches'
//! monotone-predicate assumption; runs stay deterministic and feasible,
//! but the returned chunk sizes and values carry no guarantee.

mod fastdrsub;
mod fastdrsubplus;
mod subroutines;

use thiserror::Error;

use crate::lattice::LatticeVector;

pub use fastdrsub::{fast_dr_sub, FastDrSubOutput};
pub use fastdrsubplus::{fast_dr_sub_plus, FastDrSubPlusOutput, TraceAction, TraceEvent, TraceTarget};
pub use subroutines::{
    best_large_singleton, largest_feasible_step, suffix_trim, AdditionLog, LogEntry,
};

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("alpha must lie strictly inside (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("epsilon must lie strictly inside (0, 1), got {0}")]
    InvalidEpsilon(f64),
    #[error("singleton range (floor(alpha k), k] is empty: floor = {floor_alpha_k}, k = {k}")]
    SingletonRangeEmpty { floor_alpha_k: u64, k: u64 },
}

/// A candidate vector together with its oracle value. Values always come
/// from an actual query at exactly this vector, so re-evaluating
/// reproduces them bit-for-bit.
#[derive(Debug, Clone)]
pub struct ScoredVector {
    pub vector: LatticeVector,
    pub value: f64,
}

/// Denominator of the first stage's approximation guarantee,
/// `8 (2 - alpha) / (1 - alpha) + 1 / alpha`. Also scales the second
/// stage's starting threshold.
pub fn guarantee_factor(alpha: f64) -> f64 {
    8.0 * (2.0 - alpha) / (1.0 - alpha) + 1.0 / alpha
}

/// The alpha minimizing `guarantee_factor`: `(2 sqrt(2) - 1) / 7`, where
/// the factor bottoms out at `17 + 4 sqrt(2)`.
pub fn balanced_alpha() -> f64 {
    (2.0 * std::f64::consts::SQRT_2 - 1.0) / 7.0
}

pub(crate) fn chunk_limit(alpha: f64, k: u64) -> u64 {
    (alpha * k as f64).floor() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_alpha_minimizes_the_factor() {
        let best = guarantee_factor(balanced_alpha());
        assert!((best - (17.0 + 4.0 * std::f64::consts::SQRT_2)).abs() < 1e-9);
        for alpha in [0.1, 0.2, 0.3, 0.5, 0.7, 0.9] {
            assert!(guarantee_factor(alpha) >= best - 1e-12);
        }
    }

    #[test]
    fn factor_at_half_is_26() {
        assert_eq!(guarantee_factor(0.5), 26.0);
    }

    #[test]
    fn chunk_limit_floors() {
        assert_eq!(chunk_limit(0.5, 4), 2);
        assert_eq!(chunk_limit(0.25, 8), 2);
        assert_eq!(chunk_limit(balanced_alpha(), 2), 0);
        assert_eq!(chunk_limit(balanced_alpha(), 4), 1);
    }
}
