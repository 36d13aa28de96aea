//! Benchmark objectives: network revenue allocation on an undirected
//! graph, and a synthetic concave-quadratic family with diminishing
//! returns by construction.

mod revenue;
mod synthetic;

use std::str::FromStr;

use thiserror::Error;

pub use revenue::{build_revenue_instance, RevenueInstance};
pub use synthetic::{QuadraticTerm, SyntheticConcaveQuadratic};

#[derive(Debug, Error, PartialEq)]
pub enum ObjectiveError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("node {0} out of range (node count {1})")]
    NodeOutOfRange(u32, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("edge weight {0} outside [0, 1]")]
    WeightOutOfRange(f64),
    #[error("exponent {0} outside (0, 1)")]
    ExponentOutOfRange(f64),
    #[error("term cap must be positive, got {0}")]
    NonPositiveCap(f64),
    #[error("term weight {0} is negative")]
    NegativeWeight(f64),
    #[error("unknown model name `{0}`")]
    UnknownModel(String),
}

/// Edge-weight assignment used when building revenue instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightModel {
    /// Independent draws from U[0, 1).
    Uniform01,
    /// `w_uv = 1 / max(deg(u), deg(v))`; every triangle edge gets 1/2.
    InverseDegree,
}

impl FromStr for WeightModel {
    type Err = ObjectiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform01" => Ok(Self::Uniform01),
            "inverse_degree" => Ok(Self::InverseDegree),
            other => Err(ObjectiveError::UnknownModel(other.to_string())),
        }
    }
}

/// Per-node curvature exponent assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentModel {
    /// Independent draws from the open interval (0, 1).
    Uniform01,
    /// Every node shares one exponent; 0.5 is the conventional choice.
    Fixed(f64),
}

impl FromStr for ExponentModel {
    type Err = ObjectiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform01" => Ok(Self::Uniform01),
            "fixed05" => Ok(Self::Fixed(0.5)),
            other => Err(ObjectiveError::UnknownModel(other.to_string())),
        }
    }
}
