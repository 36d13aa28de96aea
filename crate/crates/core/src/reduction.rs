//! Lattice-to-set reduction. Each coordinate bound splits into power-of-two
//! pieces plus a remainder, so any count in `[0, B_e]` is a subset sum and
//! set-based baselines can run on the induced item universe. The blow-up
//! (about `log2(k)` items per element) makes even linear set algorithms
//! quadratic here, which is the honest cost of the reduction and the
//! reason the lattice-native solvers exist.

use thiserror::Error;

use crate::lattice::{Element, LatticeVector, ProblemInstance};
use crate::oracle::ValueOracle;

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error("item index {0} out of range ({1} items)")]
    ItemOutOfRange(usize, usize),
    #[error("selection over-composes {element}: {total} exceeds bound {bound}")]
    OverComposed { element: Element, total: u64, bound: u64 },
}

/// One set item standing for `weight` units of `element`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedItem {
    pub element: Element,
    /// Position within the element's piece list, ascending.
    pub piece: usize,
    pub weight: u64,
}

/// Item universe plus the original budget and box.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    items: Vec<ReducedItem>,
    budget: u64,
    bounds: Vec<u64>,
}

impl ReducedInstance {
    pub fn items(&self) -> &[ReducedItem] {
        &self.items
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn bound(&self, e: Element) -> u64 {
        self.bounds[e.0]
    }

    /// Sums the selected items per element. Errors if any coordinate
    /// overshoots its bound; silently clamping would misprice the set.
    pub fn compose(&self, selection: &[usize]) -> Result<LatticeVector, ReductionError> {
        let mut x = LatticeVector::zero();
        for &idx in selection {
            let item = *self
                .items
                .get(idx)
                .ok_or(ReductionError::ItemOutOfRange(idx, self.items.len()))?;
            x.add_units_mut(item.element, item.weight);
            let total = x.get(item.element);
            let bound = self.bounds[item.element.0];
            if total > bound {
                return Err(ReductionError::OverComposed { element: item.element, total, bound });
            }
        }
        Ok(x)
    }

    pub fn selection_cost(&self, selection: &[usize]) -> Result<u64, ReductionError> {
        let mut cost = 0;
        for &idx in selection {
            cost += self
                .items
                .get(idx)
                .ok_or(ReductionError::ItemOutOfRange(idx, self.items.len()))?
                .weight;
        }
        Ok(cost)
    }
}

/// Pieces for one bound: `1, 2, .., 2^(m-1)` with `m = floor(log2(B+1))`,
/// then the remainder `B - (2^m - 1)` when it is non-zero. Every value in
/// `[0, B]` is representable and at most `floor(log2 B) + 1` items appear.
fn split_bound(bound: u64) -> Vec<u64> {
    let m = (bound + 1).ilog2();
    let mut pieces: Vec<u64> = (0..m).map(|j| 1u64 << j).collect();
    let remainder = bound - ((1u64 << m) - 1);
    if remainder > 0 {
        pieces.push(remainder);
    }
    pieces
}

pub fn decompose_bounds(instance: &ProblemInstance) -> ReducedInstance {
    let mut items = Vec::new();
    for e in instance.elements() {
        for (piece, weight) in split_bound(instance.bound(e)).into_iter().enumerate() {
            items.push(ReducedItem { element: e, piece, weight });
        }
    }
    ReducedInstance {
        items,
        budget: instance.budget(),
        bounds: instance.elements().map(|e| instance.bound(e)).collect(),
    }
}

/// `g(S) = f(compose(S))` and the selection's weight. One oracle query.
pub fn reduced_value_and_cost(
    f: &dyn ValueOracle,
    reduced: &ReducedInstance,
    selection: &[usize],
) -> Result<(f64, u64), ReductionError> {
    let x = reduced.compose(selection)?;
    let cost = reduced.selection_cost(selection)?;
    Ok((f.evaluate(&x), cost))
}

/// Classic marginal-density greedy over the items, plus a best-single-item
/// fallback. Ties break toward the earlier item (smaller element id, then
/// smaller piece). Quadratically many queries in the item count; a
/// deliberate stand-in baseline, not a contender.
pub fn density_greedy_reduced(f: &dyn ValueOracle, reduced: &ReducedInstance) -> LatticeVector {
    let mut x = LatticeVector::zero();
    let mut value = f.evaluate(&x);
    let mut cost = 0u64;
    let mut taken = vec![false; reduced.items.len()];
    loop {
        let mut best: Option<(usize, f64, f64)> = None;
        for (idx, item) in reduced.items.iter().enumerate() {
            if taken[idx]
                || cost + item.weight > reduced.budget
                || x.get(item.element) + item.weight > reduced.bounds[item.element.0]
            {
                continue;
            }
            let candidate_value = f.evaluate(&x.add_units(item.element, item.weight));
            let gain = candidate_value - value;
            if gain <= 0.0 {
                continue;
            }
            let density = gain / item.weight as f64;
            if best.is_none_or(|(_, bd, _)| density > bd) {
                best = Some((idx, density, candidate_value));
            }
        }
        let Some((idx, _, new_value)) = best else { break };
        let item = reduced.items[idx];
        x.add_units_mut(item.element, item.weight);
        value = new_value;
        cost += item.weight;
        taken[idx] = true;
    }
    let mut single: Option<(f64, LatticeVector)> = None;
    for item in &reduced.items {
        if item.weight > reduced.budget {
            continue;
        }
        let candidate = LatticeVector::unit(item.element, item.weight);
        let v = f.evaluate(&candidate);
        if single.as_ref().is_none_or(|(sv, _)| v > *sv) {
            single = Some((v, candidate));
        }
    }
    match single {
        Some((sv, sx)) if sv > value => sx,
        _ => x,
    }
}
