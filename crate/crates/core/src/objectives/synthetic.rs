//! Synthetic concave-quadratic family. Each term scores a weighted spend
//! total `t_j` with the parabola `t_j (C_j - t_j) / C_j`, which is concave
//! in `t_j`; pre-composing with a non-negative linear map preserves
//! diminishing returns, and sums of such terms keep it. Choosing
//! `C_j >= max t_j over the box` keeps the objective non-negative on the
//! whole oracle domain while still putting feasible points past the
//! parabola peak, so the family is non-monotone.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ObjectiveError;
use crate::lattice::{Element, LatticeVector, ProblemInstance};
use crate::oracle::ValueOracle;

#[derive(Debug, Clone)]
pub struct QuadraticTerm {
    /// Sparse direction, ascending by element, weights non-negative.
    pub weights: Vec<(Element, f64)>,
    pub cap: f64,
}

impl QuadraticTerm {
    fn total(&self, x: &LatticeVector) -> f64 {
        self.weights.iter().map(|&(e, w)| w * x.get(e) as f64).sum()
    }

    /// Largest total the box allows.
    fn box_peak(&self, instance: &ProblemInstance) -> f64 {
        self.weights.iter().map(|&(e, w)| w * instance.bound(e) as f64).sum()
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticConcaveQuadratic {
    terms: Vec<QuadraticTerm>,
}

impl SyntheticConcaveQuadratic {
    pub fn new(terms: Vec<QuadraticTerm>) -> Result<Self, ObjectiveError> {
        for term in &terms {
            if !(term.cap > 0.0) {
                return Err(ObjectiveError::NonPositiveCap(term.cap));
            }
            for &(_, w) in &term.weights {
                if w < 0.0 {
                    return Err(ObjectiveError::NegativeWeight(w));
                }
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[QuadraticTerm] {
        &self.terms
    }

    /// Confirms every cap clears its term's box peak, which is what makes
    /// the oracle non-negative everywhere it can be queried.
    pub fn validate_box(&self, instance: &ProblemInstance) -> Result<(), ObjectiveError> {
        for term in &self.terms {
            let peak = term.box_peak(instance);
            if term.cap < peak {
                return Err(ObjectiveError::NonPositiveCap(term.cap - peak));
            }
        }
        Ok(())
    }

    /// Seeded random instance. The first term always rides a single
    /// element: with caps drawn in [1.0, 1.25) of the box peak, the second
    /// unit along that direction is already past the parabola peak, which
    /// plants a non-monotone direction inside every box with bounds >= 2.
    pub fn random(instance: &ProblemInstance, term_count: usize, seed: u64) -> Self {
        let n = instance.ground_size();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut terms = Vec::with_capacity(term_count);
        for j in 0..term_count {
            let size = if j == 0 { 1 } else { rng.random_range(1..=3.min(n)) };
            let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, n, size).into_vec();
            picked.sort_unstable();
            let weights: Vec<(Element, f64)> = picked
                .into_iter()
                .map(|e| (Element(e), 0.2 + 0.8 * rng.random::<f64>()))
                .collect();
            let slack = 1.0 + 0.25 * rng.random::<f64>();
            let peak: f64 = weights
                .iter()
                .map(|&(e, w)| w * instance.bound(e) as f64)
                .sum();
            terms.push(QuadraticTerm { weights, cap: slack * peak });
        }
        Self { terms }
    }
}

impl ValueOracle for SyntheticConcaveQuadratic {
    fn evaluate(&self, x: &LatticeVector) -> f64 {
        self.terms
            .iter()
            .map(|term| {
                let t = term.total(x);
                t * (term.cap - t) / term.cap
            })
            .sum()
    }
}
