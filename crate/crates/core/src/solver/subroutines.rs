//! Shared step primitives: the binary-searched chunk step, the large
//! singleton scan, and suffix trimming of addition logs.

use super::{chunk_limit, SolverError};
use crate::lattice::{Element, LatticeVector, ProblemInstance};
use crate::oracle::ValueOracle;

/// One accepted chunk: `units` of `element` were appended while the
/// objective stood at `value_after` afterwards.
#[derive(Debug, Clone)]
pub struct LogEntry {
    pub element: Element,
    pub units: u64,
    pub value_after: f64,
}

/// Append-only record of chunk additions, in acceptance order.
#[derive(Debug, Clone, Default)]
pub struct AdditionLog {
    pub entries: Vec<LogEntry>,
}

impl AdditionLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, element: Element, units: u64, value_after: f64) {
        self.entries.push(LogEntry { element, units, value_after });
    }

    pub fn total_units(&self) -> u64 {
        self.entries.iter().map(|e| e.units).sum()
    }

    /// Summing every chunk from zero reconstructs the working vector.
    pub fn replay(&self) -> LatticeVector {
        let mut v = LatticeVector::zero();
        for entry in &self.entries {
            v.add_units_mut(entry.element, entry.units);
        }
        v
    }
}

/// Keeps the longest suffix of the log whose units sum to at most `k` and
/// composes it into a vector. Dropping the oldest chunks first costs the
/// least: later chunks were accepted against higher running thresholds.
pub fn suffix_trim(log: &AdditionLog, k: u64) -> LatticeVector {
    let mut kept = LatticeVector::zero();
    let mut used = 0u64;
    for entry in log.entries.iter().rev() {
        if used + entry.units > k {
            break;
        }
        used += entry.units;
        kept.add_units_mut(entry.element, entry.units);
    }
    kept
}

/// Largest `d` in `[1, cap]` whose last unit still clears the threshold:
/// `f(1_e | base + (d-1) 1_e) >= theta`. Returns `(d, f(base + d 1_e))`,
/// handing the caller the value at the accepted point so it never
/// re-queries; `(0, f(base))` when even the first unit fails, and
/// `(0, None)` when `cap == 0` (no queries spent).
///
/// Under diminishing returns the per-unit marginal is non-increasing in
/// `d`, so the predicate is monotone and bisection is sound: O(log cap)
/// probes, two queries each.
pub fn largest_feasible_step(
    f: &dyn ValueOracle,
    base: &LatticeVector,
    e: Element,
    cap: u64,
    theta: f64,
) -> (u64, Option<f64>) {
    if cap == 0 {
        return (0, None);
    }
    let value_base = f.evaluate(base);
    let value_one = f.evaluate(&base.add_units(e, 1));
    if !(value_one - value_base >= theta) {
        return (0, Some(value_base));
    }
    let mut lo = 1u64;
    let mut value_lo = value_one;
    let mut hi = cap;
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        let below = f.evaluate(&base.add_units(e, mid - 1));
        let at = f.evaluate(&base.add_units(e, mid));
        if at - below >= theta {
            lo = mid;
            value_lo = at;
        } else {
            hi = mid - 1;
        }
    }
    (lo, Some(value_lo))
}

/// Best single-element chunk with size in `(floor(alpha k), k]`, capped by
/// the element bound. Per element, bisection finds the discrete peak (the
/// largest `d` with a non-negative last-unit marginal; plateaus resolve to
/// the largest such `d`, so a never-negative marginal pushes the peak to
/// the cap); a peak left of the range clamps to the leftmost in-range
/// point, since past the peak the singleton value only falls. Ties across
/// elements break toward the smaller id. O(n log k) queries.
pub fn best_large_singleton(
    f: &dyn ValueOracle,
    instance: &ProblemInstance,
    alpha: f64,
) -> Result<(Element, u64, f64), SolverError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(SolverError::InvalidAlpha(alpha));
    }
    let k = instance.budget();
    let floor_alpha_k = chunk_limit(alpha, k);
    let lo = floor_alpha_k + 1;
    let zero = LatticeVector::zero();
    let mut best: Option<(Element, u64, f64)> = None;
    for e in instance.elements() {
        let hi = k.min(instance.bound(e));
        if hi < lo {
            continue;
        }
        let (peak, peak_value) = largest_feasible_step(f, &zero, e, hi, 0.0);
        let (d, value) = if peak < lo {
            (lo, f.evaluate(&LatticeVector::unit(e, lo)))
        } else {
            (peak, peak_value.expect("peak >= lo >= 1 implies a probed value"))
        };
        if best.as_ref().is_none_or(|&(_, _, bv)| value > bv) {
            best = Some((e, d, value));
        }
    }
    best.ok_or(SolverError::SingletonRangeEmpty { floor_alpha_k, k })
}
