//! Integer-lattice ground types: elements, sparse non-negative integer
//! vectors, and the feasible region (per-element bounds plus a total budget).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Index into the ground set `E = {0, .., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Sparse vector in `Z_{>=0}^E`.
///
/// Invariants: stored counts are strictly positive (absent means zero) and
/// `total` always equals the sum of stored counts, so `norm1` is O(1).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    entries: BTreeMap<Element, u64>,
    total: u64,
}

impl LatticeVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `d * 1_e`; the zero vector when `d == 0`.
    pub fn unit(e: Element, d: u64) -> Self {
        let mut v = Self::zero();
        if d > 0 {
            v.entries.insert(e, d);
            v.total = d;
        }
        v
    }

    pub fn get(&self, e: Element) -> u64 {
        self.entries.get(&e).copied().unwrap_or(0)
    }

    pub fn norm1(&self) -> u64 {
        self.total
    }

    pub fn is_zero(&self) -> bool {
        self.total == 0
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Entries in ascending element order, counts strictly positive.
    pub fn iter(&self) -> impl Iterator<Item = (Element, u64)> + '_ {
        self.entries.iter().map(|(&e, &d)| (e, d))
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.entries.keys().copied()
    }

    pub fn in_support(&self, e: Element) -> bool {
        self.entries.contains_key(&e)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.iter().all(|(e, d)| d <= other.get(e))
    }

    /// Coordinatewise maximum.
    pub fn join(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, d) in other.iter() {
            let cur = out.get(e);
            if d > cur {
                out.set(e, d);
            }
        }
        out
    }

    /// Coordinatewise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e, d) in self.iter() {
            let m = d.min(other.get(e));
            if m > 0 {
                out.set(e, m);
            }
        }
        out
    }

    /// Coordinatewise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, d) in other.iter() {
            out.set(e, out.get(e) + d);
        }
        out
    }

    /// `self + d * 1_e`; `d == 0` returns the vector unchanged.
    pub fn add_units(&self, e: Element, d: u64) -> Self {
        let mut out = self.clone();
        out.add_units_mut(e, d);
        out
    }

    pub fn add_units_mut(&mut self, e: Element, d: u64) {
        if d > 0 {
            self.set(e, self.get(e) + d);
        }
    }

    /// `self - d * 1_e`. Panics if fewer than `d` units are present.
    pub fn remove_units(&self, e: Element, d: u64) -> Self {
        let cur = self.get(e);
        assert!(cur >= d, "removing {d} units of {e} but only {cur} present");
        let mut out = self.clone();
        out.set(e, cur - d);
        out
    }

    /// Clears coordinate `e`, returning the new vector and the removed count.
    pub fn drop_element(&self, e: Element) -> (Self, u64) {
        let cur = self.get(e);
        (self.remove_units(e, cur), cur)
    }

    fn set(&mut self, e: Element, d: u64) {
        let old = if d == 0 {
            self.entries.remove(&e).unwrap_or(0)
        } else {
            self.entries.insert(e, d).unwrap_or(0)
        };
        self.total = self.total - old + d;
        debug_assert_eq!(self.total, self.entries.values().sum::<u64>());
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (e, d)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", e.0, d)?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("ground set is empty")]
    EmptyGroundSet,
    #[error("budget k must be at least 1")]
    ZeroBudget,
    #[error("bound for {0} must be at least 1")]
    ZeroBound(Element),
    #[error("expected {expected} bounds, got {got}")]
    BoundsLength { expected: usize, got: usize },
}

/// Feasible region: `norm1(x) <= k` and `x(e) <= bound(e)` for every `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    n: usize,
    budget: u64,
    bounds: Vec<u64>,
}

impl ProblemInstance {
    /// Every per-element bound set to `k`.
    pub fn uniform(n: usize, k: u64) -> Result<Self, InstanceError> {
        Self::with_bounds(n, k, vec![k; n])
    }

    pub fn with_bounds(n: usize, k: u64, bounds: Vec<u64>) -> Result<Self, InstanceError> {
        if n == 0 {
            return Err(InstanceError::EmptyGroundSet);
        }
        if k == 0 {
            return Err(InstanceError::ZeroBudget);
        }
        if bounds.len() != n {
            return Err(InstanceError::BoundsLength { expected: n, got: bounds.len() });
        }
        if let Some(e) = bounds.iter().position(|&b| b == 0) {
            return Err(InstanceError::ZeroBound(Element(e)));
        }
        Ok(Self { n, budget: k, bounds })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn bound(&self, e: Element) -> u64 {
        self.bounds[e.0]
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.n).map(Element)
    }

    /// Inside the box `0 <= x <= B` (ignores the budget).
    pub fn in_box(&self, x: &LatticeVector) -> bool {
        x.iter().all(|(e, d)| e.0 < self.n && d <= self.bounds[e.0])
    }

    pub fn is_feasible(&self, x: &LatticeVector) -> bool {
        x.norm1() <= self.budget && self.in_box(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, u64)]) -> LatticeVector {
        let mut out = LatticeVector::zero();
        for &(e, d) in pairs {
            out.add_units_mut(Element(e), d);
        }
        out
    }

    #[test]
    fn join_meet_examples() {
        let x = v(&[(0, 2), (2, 1)]);
        let y = v(&[(0, 1), (1, 3)]);
        assert_eq!(x.join(&y), v(&[(0, 2), (1, 3), (2, 1)]));
        assert_eq!(x.meet(&y), v(&[(0, 1)]));
    }

    #[test]
    fn norm_is_modular_under_join_meet() {
        let x = v(&[(0, 2), (2, 1), (5, 4)]);
        let y = v(&[(0, 1), (1, 3), (5, 6)]);
        assert_eq!(
            x.join(&y).norm1() + x.meet(&y).norm1(),
            x.norm1() + y.norm1()
        );
    }

    #[test]
    fn add_then_remove_roundtrips() {
        let x = v(&[(1, 2)]);
        let bumped = x.add_units(Element(4), 3);
        assert_eq!(bumped.norm1(), 5);
        assert_eq!(bumped.remove_units(Element(4), 3), x);
    }

    #[test]
    fn add_zero_units_is_identity() {
        let x = v(&[(1, 2)]);
        assert_eq!(x.add_units(Element(0), 0), x);
        assert!(!x.add_units(Element(0), 0).in_support(Element(0)));
    }

    #[test]
    fn drop_element_clears_coordinate() {
        let x = v(&[(1, 2), (3, 5)]);
        let (rest, removed) = x.drop_element(Element(3));
        assert_eq!(removed, 5);
        assert_eq!(rest, v(&[(1, 2)]));
        let (same, removed) = x.drop_element(Element(7));
        assert_eq!(removed, 0);
        assert_eq!(same, x);
    }

    #[test]
    fn no_zero_counts_survive() {
        let x = v(&[(0, 1)]).remove_units(Element(0), 1);
        assert!(x.is_zero());
        assert_eq!(x.support_size(), 0);
    }

    #[test]
    fn partial_order() {
        let x = v(&[(0, 1), (1, 1)]);
        let y = v(&[(0, 2), (1, 1), (2, 9)]);
        assert!(x.le(&y));
        assert!(!y.le(&x));
        assert!(x.meet(&y).le(&x));
        assert!(x.le(&x.join(&y)));
    }

    #[test]
    fn instance_validation() {
        assert_eq!(ProblemInstance::uniform(0, 3).unwrap_err(), InstanceError::EmptyGroundSet);
        assert_eq!(ProblemInstance::uniform(2, 0).unwrap_err(), InstanceError::ZeroBudget);
        assert_eq!(
            ProblemInstance::with_bounds(2, 3, vec![1, 0]).unwrap_err(),
            InstanceError::ZeroBound(Element(1))
        );
        assert_eq!(
            ProblemInstance::with_bounds(2, 3, vec![1]).unwrap_err(),
            InstanceError::BoundsLength { expected: 2, got: 1 }
        );
    }

    #[test]
    fn feasibility_checks_budget_and_box() {
        let inst = ProblemInstance::with_bounds(3, 4, vec![2, 4, 1]).unwrap();
        assert!(inst.is_feasible(&v(&[(0, 2), (1, 2)])));
        assert!(!inst.is_feasible(&v(&[(0, 2), (1, 3)])), "budget exceeded");
        assert!(!inst.is_feasible(&v(&[(2, 2)])), "box exceeded");
        assert!(!inst.is_feasible(&v(&[(5, 1)])), "element outside ground set");
        assert!(inst.in_box(&v(&[(0, 2), (1, 4)])), "box ignores budget");
    }
}
