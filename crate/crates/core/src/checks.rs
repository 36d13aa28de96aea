//! Sampling-based structure checks: diminishing returns, lattice
//! submodularity, and the two cross inequalities the solvers lean on
//! (disjoint-support cover, per-unit chunk scaling).
//!
//! Checks sample configurations from a seeded generator, so reports are
//! reproducible. A violation is recorded only when the asserted side falls
//! short by more than `tolerance * max(1, |lhs|, |rhs|)`; witnesses are
//! kept verbatim, never suppressed.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Element, LatticeVector, ProblemInstance};
use crate::oracle::ValueOracle;

/// One failed inequality: `lhs >= rhs` missed by more than the slack.
#[derive(Debug, Clone)]
pub struct Violation {
    pub vectors: Vec<(&'static str, LatticeVector)>,
    pub element: Option<Element>,
    pub scale: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
}

impl Violation {
    pub fn magnitude(&self) -> f64 {
        self.rhs - self.lhs
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lhs={:.12e} < rhs={:.12e}", self.lhs, self.rhs)?;
        for (label, v) in &self.vectors {
            write!(f, " {label}={v}")?;
        }
        if let Some(e) = self.element {
            write!(f, " element={e}")?;
        }
        if let Some(t) = self.scale {
            write!(f, " t={t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub property: &'static str,
    pub samples_tested: u64,
    pub violations: Vec<Violation>,
    pub max_violation: f64,
}

impl PropertyReport {
    fn new(property: &'static str) -> Self {
        Self { property, samples_tested: 0, violations: Vec::new(), max_violation: 0.0 }
    }

    fn record(&mut self, tolerance: f64, violation: Violation) {
        let slack = tolerance * 1.0_f64.max(violation.lhs.abs()).max(violation.rhs.abs());
        if violation.lhs < violation.rhs - slack {
            self.max_violation = self.max_violation.max(violation.magnitude());
            self.violations.push(violation);
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} samples, {} violations (max magnitude {:.3e})",
            self.property,
            self.samples_tested,
            self.violations.len(),
            self.max_violation
        )
    }
}

/// Both cross inequalities over one sampling run each.
#[derive(Debug, Clone)]
pub struct CrossChecks {
    pub disjoint_cover: PropertyReport,
    pub unit_scaling: PropertyReport,
}

/// Draws a feasible vector: support size uniform on `{0..min(n,k)}`, then
/// extra units spread uniformly over the support subject to the box and
/// budget.
pub fn sample_feasible_vector(instance: &ProblemInstance, rng: &mut ChaCha8Rng) -> LatticeVector {
    let n = instance.ground_size();
    let k = instance.budget();
    let max_support = n.min(k as usize);
    let s = rng.random_range(0..=max_support);
    let mut x = LatticeVector::zero();
    if s == 0 {
        return x;
    }
    let mut chosen: Vec<usize> = rand::seq::index::sample(rng, n, s).into_vec();
    chosen.sort_unstable();
    for &e in &chosen {
        x.add_units_mut(Element(e), 1);
    }
    let headroom: u64 = chosen
        .iter()
        .map(|&e| instance.bound(Element(e)) - 1)
        .sum::<u64>()
        .min(k - s as u64);
    let extra = rng.random_range(0..=headroom);
    for _ in 0..extra {
        let open: Vec<usize> = chosen
            .iter()
            .copied()
            .filter(|&e| x.get(Element(e)) < instance.bound(Element(e)))
            .collect();
        if open.is_empty() {
            break;
        }
        let pick = open[rng.random_range(0..open.len())];
        x.add_units_mut(Element(pick), 1);
    }
    x
}

/// Grows `x` by up to `k` extra units anywhere inside the box. The result
/// dominates `x` but may exceed the budget; only the box bounds the
/// oracle's domain.
fn extend_within_box(
    x: &LatticeVector,
    instance: &ProblemInstance,
    rng: &mut ChaCha8Rng,
) -> LatticeVector {
    let mut y = x.clone();
    let extra = rng.random_range(0..=instance.budget());
    for _ in 0..extra {
        let open: Vec<Element> = instance
            .elements()
            .filter(|&e| y.get(e) < instance.bound(e))
            .collect();
        if open.is_empty() {
            break;
        }
        y.add_units_mut(open[rng.random_range(0..open.len())], 1);
    }
    y
}

/// `f(1_e | x) >= f(1_e | y)` for sampled `x <= y` and `e` with headroom.
pub fn check_dr_submodularity(
    f: &dyn ValueOracle,
    instance: &ProblemInstance,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("dr_submodularity");
    for _ in 0..samples {
        let x = sample_feasible_vector(instance, &mut rng);
        let y = extend_within_box(&x, instance, &mut rng);
        let eligible: Vec<Element> = instance
            .elements()
            .filter(|&e| y.get(e) < instance.bound(e))
            .collect();
        if eligible.is_empty() {
            continue;
        }
        let e = eligible[rng.random_range(0..eligible.len())];
        report.samples_tested += 1;
        let lhs = f.evaluate(&x.add_units(e, 1)) - f.evaluate(&x);
        let rhs = f.evaluate(&y.add_units(e, 1)) - f.evaluate(&y);
        report.record(
            tolerance,
            Violation {
                vectors: vec![("x", x), ("y", y)],
                element: Some(e),
                scale: None,
                lhs,
                rhs,
            },
        );
    }
    report
}

/// `f(x) + f(y) >= f(x v y) + f(x ^ y)` on sampled feasible pairs.
pub fn check_lattice_submodularity(
    f: &dyn ValueOracle,
    instance: &ProblemInstance,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("lattice_submodularity");
    for _ in 0..samples {
        let x = sample_feasible_vector(instance, &mut rng);
        let y = sample_feasible_vector(instance, &mut rng);
        report.samples_tested += 1;
        let lhs = f.evaluate(&x) + f.evaluate(&y);
        let rhs = f.evaluate(&x.join(&y)) + f.evaluate(&x.meet(&y));
        report.record(
            tolerance,
            Violation { vectors: vec![("x", x), ("y", y)], element: None, scale: None, lhs, rhs },
        );
    }
    report
}

/// `f(s v x) + f(s v y) >= f(s)` for sampled `s` and disjoint-support
/// `x, y`. The `y` draw is restricted off the support of `x`, which keeps
/// the pair disjoint without rejection loops.
pub fn check_disjoint_cover(
    f: &dyn ValueOracle,
    instance: &ProblemInstance,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("disjoint_cover");
    for _ in 0..samples {
        let s = sample_feasible_vector(instance, &mut rng);
        let x = sample_feasible_vector(instance, &mut rng);
        let mut y = sample_feasible_vector(instance, &mut rng);
        for e in x.support() {
            let (trimmed, _) = y.drop_element(e);
            y = trimmed;
        }
        debug_assert!(x.meet(&y).is_zero());
        report.samples_tested += 1;
        let lhs = f.evaluate(&s.join(&x)) + f.evaluate(&s.join(&y));
        let rhs = f.evaluate(&s);
        report.record(
            tolerance,
            Violation {
                vectors: vec![("s", s), ("x", x), ("y", y)],
                element: None,
                scale: None,
                lhs,
                rhs,
            },
        );
    }
    report
}

/// `t * f(1_e | x) >= f(t 1_e | x)` for sampled `x`, `e`, and
/// `t <= bound(e) - x(e)`. Holds with equality at `t = 0` and `t = 1`.
pub fn check_unit_scaling(
    f: &dyn ValueOracle,
    instance: &ProblemInstance,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("unit_scaling");
    for _ in 0..samples {
        let x = sample_feasible_vector(instance, &mut rng);
        let eligible: Vec<Element> = instance
            .elements()
            .filter(|&e| x.get(e) < instance.bound(e))
            .collect();
        if eligible.is_empty() {
            continue;
        }
        let e = eligible[rng.random_range(0..eligible.len())];
        let t = rng.random_range(0..=instance.bound(e) - x.get(e));
        report.samples_tested += 1;
        let base = f.evaluate(&x);
        let lhs = t as f64 * (f.evaluate(&x.add_units(e, 1)) - base);
        let rhs = f.evaluate(&x.add_units(e, t)) - base;
        report.record(
            tolerance,
            Violation {
                vectors: vec![("x", x)],
                element: Some(e),
                scale: Some(t),
                lhs,
                rhs,
            },
        );
    }
    report
}

/// Runs both cross inequalities, reporting violations separately.
pub fn check_cross_inequalities(
    f: &dyn ValueOracle,
    instance: &ProblemInstance,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> CrossChecks {
    CrossChecks {
        disjoint_cover: check_disjoint_cover(f, instance, samples, seed, tolerance),
        unit_scaling: check_unit_scaling(f, instance, samples, seed, tolerance),
    }
}
