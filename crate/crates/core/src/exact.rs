//! Exhaustive optimum for reference on tiny instances. Enumerates every box
//! point inside the budget, so the state count is exponential in the ground
//! set; a guard refuses anything past desk scale unless forced.

use std::cmp::Ordering;

use thiserror::Error;

use crate::lattice::{Element, LatticeVector, ProblemInstance};
use crate::oracle::ValueOracle;

const GUARD_GROUND: usize = 8;
const GUARD_BUDGET: u64 = 10;

#[derive(Debug, Error, PartialEq)]
pub enum ExactError {
    #[error(
        "instance too large for exhaustive search (n={n}, k={k}; guard is n<={GUARD_GROUND}, \
         k<={GUARD_BUDGET}); pass force to override"
    )]
    GuardExceeded { n: usize, k: u64 },
}

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub argmax: LatticeVector,
    pub value: f64,
    /// Feasible vectors visited, the zero vector included. Equals the
    /// number of oracle queries spent.
    pub states_enumerated: u64,
}

/// Orders candidates for tie-breaking: smaller 1-norm first, then
/// lexicographically smaller coordinate sequence.
fn tie_key_less(a: &LatticeVector, b: &LatticeVector, n: usize) -> bool {
    match a.norm1().cmp(&b.norm1()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            for id in 0..n {
                match a.get(Element(id)).cmp(&b.get(Element(id))) {
                    Ordering::Less => return true,
                    Ordering::Greater => return false,
                    Ordering::Equal => {}
                }
            }
            false
        }
    }
}

fn from_counts(counts: &[u64]) -> LatticeVector {
    let mut x = LatticeVector::zero();
    for (id, &c) in counts.iter().enumerate() {
        if c > 0 {
            x.add_units_mut(Element(id), c);
        }
    }
    x
}

struct Search<'a> {
    f: &'a dyn ValueOracle,
    instance: &'a ProblemInstance,
    counts: Vec<u64>,
    best: Option<(LatticeVector, f64)>,
    states: u64,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize, remaining: u64) {
        if depth == self.instance.ground_size() {
            let candidate = from_counts(&self.counts);
            let value = self.f.evaluate(&candidate);
            self.states += 1;
            let replace = match &self.best {
                None => true,
                Some((bx, bv)) => {
                    value > *bv
                        || (value == *bv
                            && tie_key_less(&candidate, bx, self.instance.ground_size()))
                }
            };
            if replace {
                self.best = Some((candidate, value));
            }
            return;
        }
        let cap = self.instance.bound(Element(depth)).min(remaining);
        for c in 0..=cap {
            self.counts[depth] = c;
            self.descend(depth + 1, remaining - c);
        }
        self.counts[depth] = 0;
    }
}

/// Maximizes `f` over the feasible region by enumeration. Among equal
/// values the reported argmax is the smallest under (1-norm, lexicographic)
/// order, which keeps the result independent of traversal details.
pub fn brute_force_opt(
    f: &dyn ValueOracle,
    instance: &ProblemInstance,
    force: bool,
) -> Result<ExactResult, ExactError> {
    let n = instance.ground_size();
    let k = instance.budget();
    if !force && (n > GUARD_GROUND || k > GUARD_BUDGET) {
        return Err(ExactError::GuardExceeded { n, k });
    }
    let mut search =
        Search { f, instance, counts: vec![0; n], best: None, states: 0 };
    search.descend(0, k);
    let (argmax, value) = search.best.expect("zero vector is always feasible");
    Ok(ExactResult { argmax, value, states_enumerated: search.states })
}
