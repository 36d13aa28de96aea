//! Revenue allocation on a social graph. A vector `x` spends `x(v)` units
//! of advertising on each supported node; a node `u` that received no
//! spend converts with value `ln(1 + t_u^{a_u})`, where `t_u` sums the
//! incoming weighted spend. Nodes inside the support contribute nothing,
//! which makes the objective non-monotone: saturating every node drives
//! the value back to zero.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ExponentModel, ObjectiveError, WeightModel};
use crate::lattice::LatticeVector;
use crate::oracle::ValueOracle;

#[derive(Debug, Clone)]
pub struct RevenueInstance {
    node_count: usize,
    /// Adjacency with the edge weight mirrored on both endpoints.
    adjacency: Vec<Vec<(u32, f64)>>,
    exponents: Vec<f64>,
}

impl RevenueInstance {
    /// Validates and indexes a weighted undirected edge list.
    pub fn new(
        node_count: usize,
        edges: &[(u32, u32, f64)],
        exponents: Vec<f64>,
    ) -> Result<Self, ObjectiveError> {
        if node_count == 0 {
            return Err(ObjectiveError::EmptyGraph);
        }
        if exponents.len() != node_count {
            return Err(ObjectiveError::NodeOutOfRange(exponents.len() as u32, node_count));
        }
        for &a in &exponents {
            if !(a > 0.0 && a < 1.0) {
                return Err(ObjectiveError::ExponentOutOfRange(a));
            }
        }
        let mut adjacency = vec![Vec::new(); node_count];
        let mut seen = std::collections::HashSet::new();
        for &(u, v, w) in edges {
            for node in [u, v] {
                if node as usize >= node_count {
                    return Err(ObjectiveError::NodeOutOfRange(node, node_count));
                }
            }
            if u == v {
                return Err(ObjectiveError::SelfLoop(u));
            }
            if !(0.0..=1.0).contains(&w) {
                return Err(ObjectiveError::WeightOutOfRange(w));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ObjectiveError::DuplicateEdge(u, v));
            }
            adjacency[u as usize].push((v, w));
            adjacency[v as usize].push((u, w));
        }
        Ok(Self { node_count, adjacency, exponents })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn exponent(&self, node: u32) -> f64 {
        self.exponents[node as usize]
    }

    pub fn weight(&self, u: u32, v: u32) -> Option<f64> {
        self.adjacency[u as usize].iter().find(|&&(n, _)| n == v).map(|&(_, w)| w)
    }
}

impl ValueOracle for RevenueInstance {
    /// Walks only edges incident to the support. Influence totals
    /// accumulate per touched node; the final sum runs in first-touch
    /// order, which is fixed by the support and adjacency layout, so the
    /// result is bit-stable.
    fn evaluate(&self, x: &LatticeVector) -> f64 {
        let mut totals: HashMap<u32, f64> = HashMap::new();
        let mut touched: Vec<u32> = Vec::new();
        for (e, d) in x.iter() {
            let spend = d as f64;
            for &(u, w) in &self.adjacency[e.0] {
                if x.in_support(crate::lattice::Element(u as usize)) {
                    continue;
                }
                let slot = totals.entry(u).or_insert_with(|| {
                    touched.push(u);
                    0.0
                });
                *slot += w * spend;
            }
        }
        let mut value = 0.0;
        for &u in &touched {
            let t = totals[&u];
            value += (1.0 + t.powf(self.exponents[u as usize])).ln();
        }
        value
    }
}

/// Draws edge weights and exponents from the named models. The generator
/// consumes randomness in a fixed order (edges in list order, then nodes
/// ascending), so one (edges, models, seed) triple pins the instance
/// bit-for-bit.
pub fn build_revenue_instance(
    node_count: usize,
    edges: &[(u32, u32)],
    weight_model: WeightModel,
    exponent_model: ExponentModel,
    seed: u64,
) -> Result<RevenueInstance, ObjectiveError> {
    if node_count == 0 {
        return Err(ObjectiveError::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0u64; node_count];
    for &(u, v) in edges {
        for node in [u, v] {
            if node as usize >= node_count {
                return Err(ObjectiveError::NodeOutOfRange(node, node_count));
            }
            degree[node as usize] += 1;
        }
    }
    let weighted: Vec<(u32, u32, f64)> = edges
        .iter()
        .map(|&(u, v)| {
            let w = match weight_model {
                WeightModel::Uniform01 => rng.random::<f64>(),
                WeightModel::InverseDegree => {
                    1.0 / degree[u as usize].max(degree[v as usize]) as f64
                }
            };
            (u, v, w)
        })
        .collect();
    let exponents: Vec<f64> = (0..node_count)
        .map(|_| match exponent_model {
            ExponentModel::Uniform01 => loop {
                let a = rng.random::<f64>();
                if a > 0.0 {
                    break a;
                }
            },
            ExponentModel::Fixed(a) => a,
        })
        .collect();
    RevenueInstance::new(node_count, &weighted, exponents)
}
